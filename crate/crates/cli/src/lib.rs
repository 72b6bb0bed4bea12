//! Command-line driver: configuration, caches, output files and the
//! consolidated report.

pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;
pub mod report;

use config::{Cli, RunConfig};
use error::{usage, Result};

/// Validate, run the command on a pool of the requested size and write the output.
pub fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_cli(cli);
    cfg.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(usage("--threads", "need at least one thread"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| usage("--threads", e))?;
    let text = pool.install(|| pipeline::execute(&cfg, &cli.global.cache_dir))?;
    output::emit(cli.global.out.as_deref(), &text)
}
