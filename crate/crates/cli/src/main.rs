use std::io::{stderr, stdin, stdout};

fn main() {
    let code = apud_cli::run(std::env::args_os(), &mut stdin(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
