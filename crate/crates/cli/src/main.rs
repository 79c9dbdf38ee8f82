use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bbgroup::abelian::{iso_abelian, AbelianIsoOptions};
use bbgroup::blackbox::format::GroupFile;
use bbgroup::blackbox::{enumerate_span, DEFAULT_ENUMERATION_BOUND};
use bbgroup::metacyclic::{
    deconjugate_with, iso_metacyclic, recognize_coprime_metacyclic, FailureBudget,
    MetacyclicConfig, Recognition,
};
use bbgroup::oracle::{brute_force_iso, enumerate, DEFAULT_TABLE_BOUND};
use bbgroup::order::{classify_order, density_scan, factorize, mu, DensitySet, LogConvention};
use bbgroup::{Error, FactoredInteger, Group};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "bbgroup",
    version,
    about = "Order classification and isomorphism tests for black-box groups"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Total failure probability allowed to Las Vegas searches.
    #[arg(long, global = true, default_value_t = 1.0 / 1_048_576.0)]
    epsilon: f64,
    /// Prime bound splitting n into small and large parts.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Group order as `p:e,p:e,...` when the input files do not declare one.
    #[arg(long, global = true, value_parser = parse_factors)]
    order_factors: Option<FactoredInteger>,
    /// Cap on elements listed when an order has to be computed.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    enumeration_bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the small/large split of n and its order-set membership.
    Classify { n: u64 },
    /// Fraction of 1..=limit lying in an order set.
    Density {
        #[arg(long, value_enum)]
        set: SetArg,
        #[arg(long, allow_negative_numbers = true)]
        limit: i64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Decide whether two groups are isomorphic.
    Iso {
        #[arg(long, value_enum)]
        mode: Mode,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Decompose a group as a coprime semidirect product of cyclic groups.
    Recognize { file: PathBuf },
    /// Find v with x⁻¹yx = yᵛ for the two generators of a group file.
    Deconjugate { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetArg {
    D,
    Dhat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Abelian,
    Metacyclic,
    Bruteforce,
}

fn parse_factors(s: &str) -> Result<FactoredInteger, String> {
    let mut pairs = Vec::new();
    for part in s.split(',') {
        let (p, e) = part
            .split_once(':')
            .ok_or_else(|| format!("expected p:e, got {part:?}"))?;
        let p: u64 = p.trim().parse().map_err(|_| format!("bad prime {p:?}"))?;
        let e: u32 = e
            .trim()
            .parse()
            .map_err(|_| format!("bad exponent {e:?}"))?;
        pairs.push((p, e));
    }
    FactoredInteger::from_factors(&pairs).map_err(|e| e.to_string())
}

enum Outcome {
    Yes,
    No,
}

struct Run {
    cli: Cli,
}

impl Run {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cli.seed)
    }

    fn config(&self) -> Result<MetacyclicConfig, Error> {
        Ok(MetacyclicConfig {
            threshold: self.cli.threshold,
            budget: FailureBudget::new(self.cli.epsilon)?,
            enumeration_bound: self.cli.enumeration_bound,
        })
    }

    fn load(&self, path: &Path) -> Result<Group, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let group = GroupFile::parse(&text)
            .and_then(GroupFile::into_group)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        if let (Some(declared), Some(flag)) = (group.known_order(), &self.cli.order_factors) {
            if declared != flag {
                return Err(Error::OrderMismatch(format!(
                    "{} declares order {declared} but --order-factors gives {flag}",
                    path.display()
                )));
            }
        }
        if group.known_order().is_some() {
            return Ok(group);
        }
        let n = match &self.cli.order_factors {
            Some(f) => f.clone(),
            None => factorize(enumerate_span(&group, self.cli.enumeration_bound)?.len() as u64)?,
        };
        Ok(group.with_order(n))
    }

    fn print(&self, text: String, value: serde_json::Value) {
        if self.cli.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }

    fn execute(&self) -> Result<Outcome, Error> {
        match &self.cli.command {
            Command::Classify { n } => self.classify(*n),
            Command::Density {
                set,
                limit,
                threads,
            } => self.density(*set, *limit, *threads),
            Command::Iso { mode, file1, file2 } => self.iso(*mode, file1, file2),
            Command::Recognize { file } => self.recognize(file),
            Command::Deconjugate { file } => self.deconjugate(file),
        }
    }

    fn classify(&self, n: u64) -> Result<Outcome, Error> {
        let c = classify_order(n, self.cli.threshold)?;
        let f = factorize(n)?;
        let m = mu(&f);
        self.print(
            format!(
                "n = {n}\nthreshold = {:.6}\nsplit = {} * {}\nin_D = {}\nin_Dhat = {}\nmu = {m}",
                c.threshold,
                c.small_part.value(),
                c.big_part.value(),
                c.in_d,
                c.in_dhat
            ),
            json!({
                "n": n,
                "threshold": c.threshold,
                "a": c.small_part.value(),
                "b": c.big_part.value(),
                "in_D": c.in_d,
                "in_Dhat": c.in_dhat,
                "mu": m,
            }),
        );
        Ok(Outcome::Yes)
    }

    fn density(&self, set: SetArg, limit: i64, threads: usize) -> Result<Outcome, Error> {
        if limit <= 0 {
            return Err(Error::InvalidInput(format!(
                "limit must be positive, got {limit}"
            )));
        }
        let set = match set {
            SetArg::D => DensitySet::D,
            SetArg::Dhat => DensitySet::DHat,
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        let x = pool.install(|| density_scan(set, limit as u64, LogConvention::default()));
        let name = match set {
            DensitySet::D => "D",
            DensitySet::DHat => "Dhat",
        };
        self.print(
            format!("{x:.4}"),
            json!({ "set": name, "limit": limit, "density": format!("{x:.4}") }),
        );
        Ok(Outcome::Yes)
    }

    fn iso(&self, mode: Mode, file1: &Path, file2: &Path) -> Result<Outcome, Error> {
        let g = self.load(file1)?;
        let h = self.load(file2)?;
        let n = g.known_order().cloned().expect("load sets an order");
        let m = h.known_order().expect("load sets an order");
        if &n != m {
            return Err(Error::OrderMismatch(format!("orders differ: {n} and {m}")));
        }
        let same = match mode {
            Mode::Abelian => iso_abelian(
                &g,
                &h,
                &n,
                AbelianIsoOptions {
                    threshold: self.cli.threshold,
                    strict: true,
                },
            )?,
            Mode::Metacyclic => iso_metacyclic(&g, &h, &n, &self.config()?, &mut self.rng())?,
            Mode::Bruteforce => {
                let bound = DEFAULT_TABLE_BOUND.max(n.value() as usize);
                brute_force_iso(&enumerate(&g, bound)?, &enumerate(&h, bound)?)
            }
        };
        let verdict = if same { "isomorphic" } else { "not isomorphic" };
        self.print(
            verdict.to_string(),
            json!({ "isomorphic": same, "order": n.value() }),
        );
        Ok(if same { Outcome::Yes } else { Outcome::No })
    }

    fn recognize(&self, file: &Path) -> Result<Outcome, Error> {
        let g = self.load(file)?;
        let n = g.known_order().cloned().expect("load sets an order");
        match recognize_coprime_metacyclic(&g, &n, &self.config()?, &mut self.rng())? {
            Recognition::Metacyclic(dec) => {
                let (c, d) = (dec.c.value(), dec.d.value());
                self.print(
                    format!("coprime meta-cyclic: c = {c}, d = {d}, v = {}", dec.v),
                    json!({ "metacyclic": true, "c": c, "d": d, "v": dec.v }),
                );
                Ok(Outcome::Yes)
            }
            Recognition::Refused(why) => {
                self.print(
                    format!("not coprime meta-cyclic: {why}"),
                    json!({ "metacyclic": false, "reason": why.to_string() }),
                );
                Ok(Outcome::No)
            }
        }
    }

    fn deconjugate(&self, file: &Path) -> Result<Outcome, Error> {
        let g = self.load(file)?;
        let [x, y] = g.generators() else {
            return Err(Error::InvalidInput(format!(
                "expected two generators, found {}",
                g.generators().len()
            )));
        };
        let n = g.known_order().expect("load sets an order");
        let a = g.order_dividing(x, n)?;
        let b = g.order_dividing(y, n)?;
        let budget = FailureBudget::new(self.cli.epsilon)?;
        let v = deconjugate_with(&g, x, y, &a, &b, &mut self.rng(), &budget)?;
        self.print(
            v.to_string(),
            json!({ "v": v, "a": a.value(), "b": b.value() }),
        );
        Ok(Outcome::Yes)
    }
}

fn main() -> ExitCode {
    let run = Run { cli: Cli::parse() };
    match run.execute() {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
