use clap::Parser;

fn main() {
    let cli = hitloc::cli::Cli::parse();
    match hitloc::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}
