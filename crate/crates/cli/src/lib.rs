//! Library half of the `qmlbench` binary: experiment configs, the
//! shared data pipeline and model dispatch, and report rendering.
//!
//! The binary is a thin wrapper; everything it does is reachable here:
//!
//! ```no_run
//! use qmlbench_cli::{config, runner};
//!
//! let configs = config::load_configs(std::path::Path::new("suite.json"))?;
//! let outcome = runner::run_suite(&configs)?;
//! println!("{}", outcome.report.render(qmlbench_cli::report::RenderFormat::Markdown));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod config;
pub mod report;
pub mod runner;
