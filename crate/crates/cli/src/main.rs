fn main() {
    let (code, out) = lpdeform_cli::run(std::env::args_os());
    if code == lpdeform_cli::EXIT_OK || code == lpdeform_cli::EXIT_FAIL {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
