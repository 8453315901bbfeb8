use std::io;

fn main() {
    let seed = std::env::var("MOR_SEED").ok();
    let code = mor::cli::run(
        std::env::args_os(),
        seed.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
