use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (out, code) = dioph::cli::run(&argv);
    println!("{out}");
    ExitCode::from(code as u8)
}
