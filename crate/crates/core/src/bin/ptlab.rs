use clap::Parser;

fn main() {
    std::process::exit(ptlab::cli::main_with(ptlab::cli::Cli::parse()));
}
