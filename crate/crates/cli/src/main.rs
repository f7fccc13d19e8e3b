use clap::Parser;

use pwhit_cli::{emit, run, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    let code = match RunConfig::resolve(&cli).and_then(|cfg| {
        let out = run(&cfg)?;
        emit(&out.output, cfg.output_path.as_deref())?;
        Ok(out.exit_code)
    }) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pwhit: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
