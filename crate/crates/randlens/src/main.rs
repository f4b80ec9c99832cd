use clap::Parser;
use randlens::cli::{run, Cli};

fn main() -> std::process::ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::try_parse() {
        Ok(cli) => std::process::ExitCode::from(run(cli)),
        Err(e) => {
            // help/version are successful exits; anything else is a usage error
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::ExitCode::from(code)
        }
    }
}
