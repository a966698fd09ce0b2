use clap::Parser;
use paspectra_cli::cli::Cli;
use paspectra_cli::error::CliError;
use paspectra_cli::run;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            if e.use_stderr() {
                let message = e.to_string().replace('\n', "; ");
                let err = CliError::Usage(message);
                eprintln!("{}", err.to_json_line());
                std::process::exit(err.exit_code());
            }
            let _ = e.print();
            std::process::exit(0);
        }
    };
    match run::execute(cli) {
        Ok(paths) => {
            for path in paths {
                println!("{}", path.display());
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            std::process::exit(e.exit_code());
        }
    }
}
