use clap::Parser;
use prefcone::cli::{self, CliConfig};

fn main() {
    let verbosity = CliConfig::try_parse().map(|c| c.verbose).unwrap_or(0);
    let level = match verbosity {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).init();

    let code = cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
