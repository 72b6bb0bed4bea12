use clap::Parser;
use primezero_cli::config::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = primezero_cli::run(&cli) {
        eprintln!("{}", e.line());
        std::process::exit(e.exit_code());
    }
}
