use clap::Parser;

fn main() {
    let cli = nsymm_cli::Cli::parse();
    let outcome = nsymm_cli::run(cli);
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
