use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = component_lattice::cli::run(std::env::args_os());
    if code == 0 || code == 1 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    ExitCode::from(code as u8)
}
