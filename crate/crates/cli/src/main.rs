use std::io;
use std::process::ExitCode;
use std::thread;

// Literals and powers desugar to long chains that the library walks
// recursively, so the work runs on a thread with a generous stack.
const STACK_BYTES: usize = 512 << 20;

fn main() -> ExitCode {
    let worker = thread::Builder::new().stack_size(STACK_BYTES).spawn(|| {
        let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
        hopoly_cli::run(std::env::args_os(), &mut out, &mut err)
    });
    let code = worker.expect("spawn worker").join().unwrap_or(101);
    ExitCode::from(code as u8)
}
