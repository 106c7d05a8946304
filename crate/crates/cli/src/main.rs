use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = amicable_cli::run(std::env::args_os());
    if amicable_cli::write_invocation(&inv, &mut io::stdout().lock(), &mut io::stderr().lock()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(inv.code as u8)
}
