use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = Vec::new();
    let code = imlk_cli::run(&args, &mut out);
    let stdout = std::io::stdout();
    let _ = stdout.lock().write_all(&out);
    ExitCode::from(code as u8)
}
