use std::io::{self, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = tiltmult_cli::main_with(std::env::args_os(), &mut out, &mut io::stderr());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
