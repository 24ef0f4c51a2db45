use std::process::ExitCode;

fn main() -> ExitCode {
    let code = alos3d::cli::main_with_args(std::env::args().skip(1));
    ExitCode::from(code as u8)
}
