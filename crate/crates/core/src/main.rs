use std::io;
use std::panic;
use std::process::ExitCode;

use twocircles::cli::{run, EXIT_INTERNAL};

fn main() -> ExitCode {
    // a panic is a broken internal invariant, reported with its own exit code
    let code = panic::catch_unwind(|| {
        let mut stdout = io::stdout().lock();
        let mut stderr = io::stderr().lock();
        run(std::env::args_os(), &mut stdout, &mut stderr)
    })
    .unwrap_or(EXIT_INTERNAL);
    ExitCode::from(code as u8)
}
