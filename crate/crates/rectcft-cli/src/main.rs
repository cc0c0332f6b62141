use clap::Parser;

fn main() {
    let cli = rectcft_cli::Cli::parse();
    let code = match rectcft_cli::run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
