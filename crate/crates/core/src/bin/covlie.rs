use clap::Parser;
use covlie::cli::{configure_threads, run, Cli, EXIT_CONFIG};

fn main() {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        std::process::exit(EXIT_CONFIG);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            e.print().ok();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}
