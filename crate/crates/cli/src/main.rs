use clap::Parser;

fn main() {
    let cli = suffridge_cli::Cli::parse();
    std::process::exit(suffridge_cli::run(&cli));
}
