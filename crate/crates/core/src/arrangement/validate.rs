use std::fmt;

use super::{Arrangement, Curve, Dart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    VertexDegree,
    ColorAlternation,
    ArcInvolution,
    ArcColor,
    StraightAheadCycles,
    Connected,
    GenusZero,
    SignSum,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::VertexDegree,
        Check::ColorAlternation,
        Check::ArcInvolution,
        Check::ArcColor,
        Check::StraightAheadCycles,
        Check::Connected,
        Check::GenusZero,
        Check::SignSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::VertexDegree => "4 darts per vertex",
            Check::ColorAlternation => "color alternation",
            Check::ArcInvolution => "arc involution",
            Check::ArcColor => "arc color",
            Check::StraightAheadCycles => "straight-ahead cycles",
            Check::Connected => "connected",
            Check::GenusZero => "genus 0",
            Check::SignSum => "sign sum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    /// Not evaluated because a check it depends on failed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub status: CheckStatus,
}

/// Pass/fail per arrangement invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub outcomes: Vec<CheckOutcome>,
    genus: Option<u32>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.outcomes.iter().all(|o| o.status == CheckStatus::Pass)
    }

    pub fn status(&self, check: Check) -> &CheckStatus {
        &self
            .outcomes
            .iter()
            .find(|o| o.check == check)
            .expect("every check is reported")
            .status
    }

    pub fn failed(&self) -> Vec<Check> {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.status, CheckStatus::Fail(_)))
            .map(|o| o.check)
            .collect()
    }

    /// The genus when the only failure is a positive genus.
    pub fn genus_failure(&self) -> Option<u32> {
        match (self.failed().as_slice(), self.genus) {
            ([Check::GenusZero], Some(g)) if g > 0 => Some(g),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        self.outcomes
            .iter()
            .filter_map(|o| match &o.status {
                CheckStatus::Fail(msg) => Some(format!("{}: {msg}", o.check.name())),
                _ => None,
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.status {
                CheckStatus::Pass => writeln!(f, "pass  {}", o.check.name())?,
                CheckStatus::Fail(msg) => writeln!(f, "FAIL  {}: {msg}", o.check.name())?,
                CheckStatus::Skipped => writeln!(f, "skip  {}", o.check.name())?,
            }
        }
        Ok(())
    }
}

fn status(ok: bool, msg: impl FnOnce() -> String) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(msg())
    }
}

pub(super) fn validate(arr: &Arrangement) -> ValidationReport {
    let n = arr.dart_count();
    let vertices = arr.vertices();
    let v_count = vertices.len();

    let degree = match vertices.iter().find(|c| c.len() != 4) {
        None => CheckStatus::Pass,
        Some(c) => CheckStatus::Fail(format!(
            "vertex at dart {} has {} darts",
            c[0],
            c.len()
        )),
    };

    let alternation = match arr.darts().find(|&d| arr.color(arr.rotate(d)) == arr.color(d)) {
        None => CheckStatus::Pass,
        Some(d) => CheckStatus::Fail(format!("darts {d} and {} have the same color", arr.rotate(d))),
    };

    let involution = match arr
        .darts()
        .find(|&d| arr.mate(d) == d || arr.mate(arr.mate(d)) != d)
    {
        None => CheckStatus::Pass,
        Some(d) => CheckStatus::Fail(format!("mate of dart {d} is not a proper involution")),
    };

    let arc_color = match arr.darts().find(|&d| arr.color(arr.mate(d)) != arr.color(d)) {
        None => CheckStatus::Pass,
        Some(d) => CheckStatus::Fail(format!("arc at dart {d} changes color")),
    };

    let straight = if alternation == CheckStatus::Pass {
        straight_ahead_check(arr, v_count)
    } else {
        CheckStatus::Skipped
    };

    let connected = arr.is_connected();
    let mut genus = None;
    let genus_status = if connected {
        match arr.genus() {
            Ok(g) => {
                genus = Some(g);
                status(g == 0, || format!("genus {g}"))
            }
            Err(e) => CheckStatus::Fail(e.to_string()),
        }
    } else {
        CheckStatus::Skipped
    };

    // A zero sign sum is a consequence of sphericity, so it is only
    // meaningful once the structure and the genus are known to be right.
    let structural = [&degree, &alternation, &involution, &arc_color, &straight]
        .iter()
        .all(|s| **s == CheckStatus::Pass);
    let sign_sum = if structural && genus_status == CheckStatus::Pass && n > 0 {
        let sum = arr.sign_sum();
        status(sum == 0, || format!("sum is {sum}"))
    } else {
        CheckStatus::Skipped
    };

    let outcomes = vec![
        (Check::VertexDegree, degree),
        (Check::ColorAlternation, alternation),
        (Check::ArcInvolution, involution),
        (Check::ArcColor, arc_color),
        (Check::StraightAheadCycles, straight),
        (
            Check::Connected,
            status(connected, || "map has more than one component".into()),
        ),
        (Check::GenusZero, genus_status),
        (Check::SignSum, sign_sum),
    ]
    .into_iter()
    .map(|(check, status)| CheckOutcome { check, status })
    .collect();
    ValidationReport { outcomes, genus }
}

fn straight_ahead_check(arr: &Arrangement, v_count: usize) -> CheckStatus {
    let mut seen = vec![false; arr.dart_count()];
    for curve in [Curve::First, Curve::Second] {
        let mut lengths = Vec::new();
        for start in arr.darts().filter(|&d| arr.color(d) == curve) {
            if seen[start.index()] {
                continue;
            }
            let mut len = 0;
            let mut d: Dart = start;
            while !seen[d.index()] {
                seen[d.index()] = true;
                len += 1;
                d = arr.straight_ahead(d);
            }
            lengths.push(len);
        }
        if lengths.len() != 2 || lengths.iter().any(|&l| l != v_count) {
            return CheckStatus::Fail(format!(
                "curve {} walks have lengths {lengths:?}, expected two of length {v_count}",
                curve.number()
            ));
        }
    }
    CheckStatus::Pass
}
