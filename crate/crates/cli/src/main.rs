use clap::Parser;

fn main() {
    let cli = match shiftlab_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; keep their exit at 0 and
            // reserve 1 for genuine usage errors (2 means a failed
            // mathematical precondition everywhere in this tool)
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match shiftlab_cli::run(cli) {
        Ok(outcome) => {
            if let Some(report) = outcome.stdout {
                print!("{report}");
            }
            std::process::exit(outcome.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
