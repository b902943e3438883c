//! Run configurations: the parsed command plus global options, stored as
//! `key=value` text so a run can be replayed exactly.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use xi_counter_core::dataio::{read_key_values, write_key_values};
use xi_counter_core::{Error, Result};

use crate::args::{Cli, Command, Mode, Which};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    /// Command flags without the leading dashes, e.g. `T` -> `100`.
    pub params: BTreeMap<String, String>,
    pub csv: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub seed: u64,
}

fn put(m: &mut BTreeMap<String, String>, k: &str, v: impl ToString) {
    m.insert(k.to_string(), v.to_string());
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Option<Self> {
        let mut p = BTreeMap::new();
        let name = match &cli.command {
            Command::Eval { t, eps, order } => {
                put(&mut p, "t", t);
                put(&mut p, "eps", eps);
                put(&mut p, "order", order);
                "eval"
            }
            Command::Theta { t } => {
                put(&mut p, "t", t);
                "theta"
            }
            Command::Count { t, order } => {
                put(&mut p, "T", t);
                put(&mut p, "order", order);
                "count"
            }
            Command::Bound {
                t_max,
                t_min,
                mode,
                delta,
                zeros,
            } => {
                put(&mut p, "T-max", t_max);
                put(&mut p, "T-min", t_min);
                put(&mut p, "mode", match mode {
                    Mode::Gaps => "gaps",
                    Mode::Uniform => "uniform",
                });
                put(&mut p, "delta", delta);
                put(&mut p, "zeros", zeros.display());
                "bound"
            }
            Command::Perturb {
                t_lo,
                t_hi,
                step,
                split,
            } => {
                put(&mut p, "t-lo", t_lo);
                put(&mut p, "t-hi", t_hi);
                put(&mut p, "step", step);
                if *split {
                    put(&mut p, "split", "");
                }
                "perturb"
            }
            Command::Lehmer { center, halfwidth } => {
                put(&mut p, "center", center);
                put(&mut p, "halfwidth", halfwidth);
                "lehmer"
            }
            Command::Locus {
                t_lo,
                t_hi,
                eps_hi,
                nt,
                neps,
                which,
                order,
                tol,
                split,
            } => {
                put(&mut p, "t-lo", t_lo);
                put(&mut p, "t-hi", t_hi);
                put(&mut p, "eps-hi", eps_hi);
                put(&mut p, "nt", nt);
                put(&mut p, "neps", neps);
                put(&mut p, "which", match which {
                    Which::Z => "z",
                    Which::Zstar => "zstar",
                });
                if let Some(m) = order {
                    put(&mut p, "order", m);
                }
                put(&mut p, "tol", tol);
                if *split {
                    put(&mut p, "split", "");
                }
                "locus"
            }
            Command::Compare {
                zeros,
                t_max,
                samples,
                order,
            } => {
                put(&mut p, "zeros", zeros.display());
                put(&mut p, "T-max", t_max);
                put(&mut p, "samples", samples);
                put(&mut p, "order", order);
                "compare"
            }
            Command::Replay { .. } => return None,
        };
        Some(Self {
            command: name.to_string(),
            params: p,
            csv: cli.csv.clone(),
            plot: cli.plot.clone(),
            seed: cli.seed,
        })
    }

    /// Argument vector (without program name) that reproduces this run.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self.command.clone()];
        for (k, v) in &self.params {
            args.push(format!("--{k}"));
            if !v.is_empty() {
                args.push(v.clone());
            }
        }
        if let Some(c) = &self.csv {
            args.push("--csv".into());
            args.push(c.display().to_string());
        }
        if let Some(c) = &self.plot {
            args.push("--plot".into());
            args.push(c.display().to_string());
        }
        args.push("--seed".into());
        args.push(self.seed.to_string());
        args
    }

    pub fn to_entries(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("command".into(), self.command.clone());
        for (k, v) in &self.params {
            m.insert(format!("param.{k}"), v.clone());
        }
        if let Some(c) = &self.csv {
            m.insert("out.csv".into(), c.display().to_string());
        }
        if let Some(c) = &self.plot {
            m.insert("out.plot".into(), c.display().to_string());
        }
        m.insert("seed".into(), self.seed.to_string());
        m
    }

    pub fn render(&self) -> String {
        self.to_entries()
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_key_values(path, &self.to_entries())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let m = read_key_values(path)?;
        let bad = |msg: &str| Error::Format {
            path: path.display().to_string(),
            line: 0,
            message: msg.to_string(),
        };
        let command = m.get("command").ok_or_else(|| bad("missing command"))?.clone();
        let seed = m
            .get("seed")
            .map(|s| s.parse().map_err(|_| bad("seed is not an integer")))
            .transpose()?
            .unwrap_or(1);
        let params = m
            .iter()
            .filter_map(|(k, v)| k.strip_prefix("param.").map(|k| (k.to_string(), v.clone())))
            .collect();
        Ok(Self {
            command,
            params,
            csv: m.get("out.csv").map(PathBuf::from),
            plot: m.get("out.plot").map(PathBuf::from),
            seed,
        })
    }
}
