//! Drive the command-line entry point with a TOML run configuration.

fn main() {
    let cfg = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/s5-scaled.toml").into());
    let code = fstructure_lab::cli::main_with_args(["fslab", "--config", &cfg], &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}");
}
