use clap::Parser;

use chainext_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let format = cli.command.config().format;
    match run(&cli.command) {
        Ok(out) => {
            print!("{}", out.render(format));
            std::process::exit(out.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
