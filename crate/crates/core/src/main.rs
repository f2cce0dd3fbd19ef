use clap::Parser;

fn main() {
    // Usage errors exit with 1: code 2 is reserved for emitted refutations.
    let config = match kmspan::cli::RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match kmspan::cli::run(config) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
