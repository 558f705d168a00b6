use std::io::Write;

fn main() {
    let env = sombor::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(env.stdout.as_bytes());
    let _ = std::io::stderr().write_all(env.stderr.as_bytes());
    std::process::exit(env.exit_code);
}
