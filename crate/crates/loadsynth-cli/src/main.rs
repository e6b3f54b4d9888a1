use clap::Parser;

fn main() {
    env_logger::init();
    let cli = loadsynth_cli::Cli::parse();
    if let Err(err) = loadsynth_cli::run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
