use std::io::Write;
use std::path::PathBuf;

fn main() {
    let out = hvir_cli::run(
        std::env::args().skip(1),
        std::env::var_os(hvir_cli::CONFIG_ENV).map(PathBuf::from),
    );
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
