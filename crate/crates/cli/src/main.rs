use std::io::Write;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let run = locfrac::execute(std::env::args_os());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(run.stdout.as_bytes());
    let _ = out.flush();
    std::process::exit(run.code);
}
