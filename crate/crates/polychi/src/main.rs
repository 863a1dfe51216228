use clap::error::ErrorKind as ClapKind;
use clap::Parser;
use polychi::{execute, Cli, CliError};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let message = e.render().to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("{}", CliError::parse("argv", first).to_json());
            std::process::exit(2);
        }
    };
    std::process::exit(execute(&cli));
}
