use std::io::Write;

use interval_coloring::cli::{run, Status};

fn main() {
    let result = run(std::env::args_os());
    let mut stderr = std::io::stderr().lock();
    if let Some(out) = &result.output {
        let sink: &mut dyn Write = if result.status == Status::Error { &mut stderr } else { &mut std::io::stdout() };
        let _ = sink.write_all(out.as_bytes());
        if !out.ends_with('\n') {
            let _ = writeln!(sink);
        }
    }
    for line in &result.summary {
        let _ = writeln!(stderr, "{line}");
    }
    for path in &result.artifacts {
        let _ = writeln!(stderr, "wrote {}", path.display());
    }
    let _ = writeln!(stderr, "status: {}", result.status);
    std::process::exit(result.status.exit_code());
}
