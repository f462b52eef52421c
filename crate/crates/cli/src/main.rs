use std::io::Write;

use clap::Parser;

use lhur_cli::args::Cli;
use lhur_cli::dispatch;

fn main() {
    let cli = Cli::parse();
    let (status, out) = dispatch(&cli);
    let mut stdout = std::io::stdout().lock();
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(stdout, "{out}");
    std::process::exit(status);
}
