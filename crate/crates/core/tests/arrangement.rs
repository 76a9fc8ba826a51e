mod common;

use twocircles::arrangement::{
    decode, decode_unchecked, encode, ArrangementError, Check, Curve, GaussPairCode, Sign,
};
use twocircles::canonical::{canonical_key, EquivalenceMode};

#[test]
fn catalog_members_satisfy_structural_invariants() {
    for arr in common::members() {
        let n = arr.n_points();
        assert_eq!(arr.vertices().len(), n);
        assert_eq!(arr.dart_count() / 2, 2 * n, "arc count");
        assert_eq!(arr.face_count(), n + 2);
        assert_eq!(arr.genus().unwrap(), 0);
        assert!(arr.validate().is_valid(), "{}", arr.validate());
        for ring in arr.vertices() {
            assert_eq!(ring.len(), 4);
            for w in 0..4 {
                assert_ne!(arr.color(ring[w]), arr.color(ring[(w + 1) % 4]));
            }
        }
        for d in arr.darts() {
            assert_eq!(arr.color(d), arr.color(arr.mate(d)));
        }
        for curve in [Curve::First, Curve::Second] {
            let start = arr.darts().find(|&d| arr.color(d) == curve).unwrap();
            assert_eq!(arr.curve_walk(start).len(), n);
        }
        assert_eq!(arr.sign_sum(), 0);
        assert!(!arr.bigons().is_empty());
    }
}

#[test]
fn encode_then_decode_preserves_the_class() {
    for arr in common::members() {
        let code = encode(&arr).unwrap();
        let back = decode(&code).unwrap();
        for mode in [EquivalenceMode::CONFIGURATION, EquivalenceMode::FLOW] {
            assert_eq!(canonical_key(&back, mode).unwrap(), canonical_key(&arr, mode).unwrap());
        }
        assert_eq!(code.to_string().parse::<GaussPairCode>().unwrap(), code);
    }
}

fn all_codes(n: usize, mut f: impl FnMut(GaussPairCode)) {
    let mut rest: Vec<u32> = (2..=n as u32).collect();
    loop {
        let mut order = vec![1];
        order.extend_from_slice(&rest);
        for mask in 0u32..(1 << n) {
            let signs = (0..n)
                .map(|v| if mask >> v & 1 == 0 { Sign::Plus } else { Sign::Minus })
                .collect();
            f(GaussPairCode::new(order.clone(), signs).unwrap());
        }
        // lexicographic successor of `rest`
        let Some(i) = rest.windows(2).rposition(|w| w[0] < w[1]) else { break };
        let j = rest.iter().rposition(|&x| x > rest[i]).unwrap();
        rest.swap(i, j);
        rest[i + 1..].reverse();
    }
}

#[test]
fn nonzero_sign_sum_is_never_spherical() {
    for n in [2, 4, 6] {
        let mut checked = 0;
        all_codes(n, |code| {
            if code.sign_sum() != 0 {
                let arr = decode_unchecked(&code).unwrap();
                assert!(arr.genus().unwrap() > 0, "{code}");
                assert!(decode(&code).is_err());
                checked += 1;
            }
        });
        assert!(checked > 0);
    }
}

#[test]
fn genus_one_code_fails_only_the_genus_check() {
    let code: GaussPairCode = "GP1 2 1 2 + +".parse().unwrap();
    let report = decode_unchecked(&code).unwrap().validate();
    assert_eq!(report.failed(), vec![Check::GenusZero]);
    assert_eq!(report.genus_failure(), Some(1));
    assert!(matches!(decode(&code), Err(ArrangementError::NotSpherical { genus: 1 })));
}

#[test]
fn malformed_codes_are_rejected() {
    for bad in ["", "GP1", "GP1 3 1 2 3 + - +", "GP1 2 1 1 + -", "GP1 2 1 2 + x", "GP2 2 1 2 + -", "GP1 4 1 2 + -"] {
        assert!(bad.parse::<GaussPairCode>().is_err(), "{bad:?}");
    }
}
