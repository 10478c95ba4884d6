use clap::Parser;

fn main() {
    let cli = cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = match cli::run(&cli, &mut stdout) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    };
    std::process::exit(code);
}
