use std::path::PathBuf;

use bergman_core::classify::{
    atomic_synthesize, inclusion_bergman, lattice_generate, lipschitz_stretch, synthesis_report, witness_ft_in_bergman,
    witness_ft_in_lipschitz, Bergman, LacunaryWitness,
};
use bergman_core::geometry::{
    berezin, berezin_sup, carleson_constant, forelli_rudin, forelli_rudin_growth, CarlesonGrid, Growth,
};
use bergman_core::kernels::{kernel_eval, kernel_regime, kernel_series, natural_kernel_eval, KernelSpec, Regime};
use bergman_core::lacunary::{Decision, LipschitzClass};
use bergman_core::sample::rng;
use bergman_core::spaces::{bergman_norm_method, bergman_norm_p2, Method, QuadratureSpec, SpaceParams};
use bergman_core::{C64, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::error::{CliError, CliResult};
use crate::io::{parse_list, parse_measure, parse_pairs, parse_point, parse_series};
use crate::report::{Format, Table, Value};
use crate::suites::{verify, SuiteConfig};

#[derive(Debug, Parser)]
#[command(
    name = "bergman",
    version,
    about = "Weighted Bergman spaces on the unit ball: norms, kernels, measures, inclusions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Quad,
    Mc,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ft,
    Lacunary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm of a series file in A^p_alpha.
    #[command(allow_negative_numbers = true)]
    Norm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// exact needs p = 2; both emits the exact row and a numerical one.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 60)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Membership of a test function (f_t or a lacunary series) in A^p_alpha and a growth space.
    #[command(allow_negative_numbers = true)]
    Member {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Exponent of f_t.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Lacunary coefficients 2^(k sigma) k^(-tau) on z^(2^k).
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        /// Also test the growth space Lambda_(-gamma).
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Reproducing kernel K_alpha(z, w), closed form and truncated series.
    #[command(allow_negative_numbers = true)]
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 60)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel of the natural inner product of order k.
    #[command(allow_negative_numbers = true)]
    NaturalKernel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 60)]
        degree: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Carleson constant of a measure file over the seeded grid.
    #[command(allow_negative_numbers = true)]
    Carleson {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Berezin transform of a measure file, at --z or its sup over the probe grid.
    #[command(allow_negative_numbers = true)]
    Berezin {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long)]
        z: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Forelli-Rudin integral at |z| = rho.
    #[command(allow_negative_numbers = true)]
    ForelliRudin {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value = "0.9,0.95,0.99,0.995,0.999")]
        rho: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Inclusion relation of every space in --a to every space in --b.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Spaces as `p,alpha;p,alpha;...`
        #[arg(long)]
        a: String,
        /// Defaults to --a.
        #[arg(long)]
        b: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Random atomic sum over a seeded lattice and its norm against the coefficient sum.
    #[command(allow_negative_numbers = true)]
    Synthesize {
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 3.0)]
        b: f64,
        #[arg(long, default_value_t = 100)]
        atoms: usize,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 4)]
        shells: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite (or all); exits 1 when a check fails.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

/// A rendered report plus whether every check in it passed.
pub struct Outcome {
    pub table: Table,
    pub common: Common,
    pub ok: bool,
}

impl Outcome {
    fn ok(table: Table, common: Common) -> CliResult<Self> {
        Ok(Outcome { table, common, ok: true })
    }

    pub fn render(&self) -> String {
        self.table.render(self.common.format.into())
    }
}

fn read(path: &PathBuf) -> CliResult<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Quadrature => "quad",
        Method::MonteCarlo => "mc",
    }
}

fn decision_name(d: Decision) -> &'static str {
    match d {
        Decision::Member => "member",
        Decision::NonMember => "non-member",
        Decision::Inconclusive => "inconclusive",
    }
}

fn regime_name(r: Regime) -> String {
    match r {
        Regime::Standard => "standard".into(),
        Regime::Log => "log".into(),
        Regime::FracNeg(d) => format!("frac-neg({d})"),
        Regime::IntNeg(d) => format!("int-neg({d})"),
    }
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Norm { input, p, alpha, method, samples, degree, common } => {
            let f = parse_series(&read(&input)?)?.truncate(degree);
            let sp = SpaceParams::new(f.dim(), p, alpha)?;
            let q = QuadratureSpec { mc_samples: samples, seed: common.seed, ..QuadratureSpec::default() };
            let numeric = if f.dim() == 1 { Method::Quadrature } else { Method::MonteCarlo };
            let method = method.unwrap_or(if p == 2.0 { MethodArg::Exact } else { MethodArg::Quad });
            let mut t = Table::new("norm", common.seed, &["method", "value", "integral", "stderr"])
                .param("n", f.dim())
                .param("p", p)
                .param("alpha", alpha)
                .param("degree", degree)
                .param("samples", samples as usize);
            if matches!(method, MethodArg::Exact | MethodArg::Both) {
                if p != 2.0 {
                    return Err(bergman_core::Error::InvalidParams("exact norms need p = 2").into());
                }
                let v = bergman_norm_p2(&f, &sp)?;
                t.push(vec!["exact".into(), v.into(), Value::Null, Value::Null]);
            }
            let numeric_rows: &[Method] = match method {
                MethodArg::Exact => &[],
                MethodArg::Quad if f.dim() == 1 => &[Method::Quadrature],
                MethodArg::Quad => &[Method::MonteCarlo],
                MethodArg::Mc => &[Method::MonteCarlo],
                MethodArg::Both => std::slice::from_ref(&numeric),
            };
            for &m in numeric_rows {
                let e = bergman_norm_method(&f, &sp, &q, m)?;
                t.push(vec![method_name(e.method).into(), e.value.into(), e.integral.into(), e.stderr.into()]);
            }
            Outcome::ok(t, common)
        }
        Command::Member { family, n, p, alpha, t, sigma, tau, gamma, common } => {
            let sp = SpaceParams::new(n, p, alpha)?;
            let mut tab = Table::new("member", common.seed, &["space", "decision"])
                .param(
                    "family",
                    match family {
                        Family::Ft => "ft",
                        Family::Lacunary => "lacunary",
                    },
                )
                .param("n", n)
                .param("p", p)
                .param("alpha", alpha);
            let bergman = format!("A^{p}_{alpha}");
            match family {
                Family::Ft => {
                    tab = tab.param("t", t);
                    let d = if witness_ft_in_bergman(t, &sp) { Decision::Member } else { Decision::NonMember };
                    tab.push(vec![bergman.into(), decision_name(d).into()]);
                    if let Some(g) = gamma {
                        let d = if witness_ft_in_lipschitz(t, g) { "member" } else { "non-member" };
                        tab.push(vec![format!("Lambda_{}", -g).into(), d.into()]);
                    }
                }
                Family::Lacunary => {
                    tab = tab.param("sigma", sigma).param("tau", tau);
                    let w = LacunaryWitness { sigma, tau };
                    tab.push(vec![bergman.into(), decision_name(w.in_bergman(&sp)?).into()]);
                    if let Some(g) = gamma {
                        let d = match w.in_lipschitz(g)? {
                            LipschitzClass::LittleOh => "member (little-o)",
                            LipschitzClass::BigOnly => "member",
                            LipschitzClass::Neither => "non-member",
                            LipschitzClass::Inconclusive => "inconclusive",
                        };
                        tab.push(vec![format!("Lambda_{}", -g).into(), d.into()]);
                    }
                }
            }
            Outcome::ok(tab, common)
        }
        Command::Kernel { n, alpha, z, w, degree, common } => {
            let (z, w) = (parse_point(&z)?, parse_point(&w)?);
            if z.dim() != n || w.dim() != n {
                return Err(CliError::parse(format!("points must have {n} coordinates")));
            }
            let spec = KernelSpec::new(n, alpha)?;
            let closed = kernel_eval(&spec, &z, &w)?;
            let series = kernel_series(&spec, &w, degree)?.evaluate(&z)?;
            let mut t = Table::new("kernel", common.seed, &["form", "re", "im"])
                .param("n", n)
                .param("alpha", alpha)
                .param("degree", degree)
                .param("regime", regime_name(kernel_regime(n, alpha)));
            t.push(vec!["closed".into(), closed.re.into(), closed.im.into()]);
            t.push(vec!["series".into(), series.re.into(), series.im.into()]);
            Outcome::ok(t, common)
        }
        Command::NaturalKernel { n, alpha, k, z, w, degree, tol, common } => {
            let (z, w) = (parse_point(&z)?, parse_point(&w)?);
            let v = natural_kernel_eval(n, alpha, k, z.coords(), w.coords(), degree, tol)?;
            let mut t = Table::new("natural-kernel", common.seed, &["re", "im", "tail_bound"])
                .param("n", n)
                .param("alpha", alpha)
                .param("k", k)
                .param("degree", degree);
            t.push(vec![v.value.re.into(), v.value.im.into(), v.tail_bound.into()]);
            Outcome::ok(t, common)
        }
        Command::Carleson { input, alpha, common } => {
            let mu = parse_measure(&read(&input)?)?;
            let grid = CarlesonGrid::standard(mu.dim(), common.seed);
            let c = carleson_constant(&mu, alpha, &grid)?;
            let (i, j) = (c.index / grid.radii.len(), c.index % grid.radii.len());
            let mut t = Table::new("carleson", common.seed, &["constant", "direction", "radius", "grid_points"])
                .param("n", mu.dim())
                .param("alpha", alpha)
                .param("atoms", mu.atoms().len());
            t.push(vec![c.value.into(), i.into(), grid.radii[j].into(), c.points.into()]);
            Outcome::ok(t, common)
        }
        Command::Berezin { input, s, gamma, z, common } => {
            let mu = parse_measure(&read(&input)?)?;
            let mut t = Table::new("berezin", common.seed, &["point", "value"])
                .param("n", mu.dim())
                .param("s", s)
                .param("gamma", gamma);
            match z {
                Some(z) => {
                    let zp = parse_point(&z)?;
                    t.push(vec![z.into(), berezin(&mu, s, gamma, zp.coords())?.into()]);
                }
                None => {
                    let grid = CarlesonGrid::standard(mu.dim(), common.seed);
                    let b = berezin_sup(&mu, s, gamma, &grid)?;
                    t.push(vec![format!("sup over {} probes", b.points).into(), b.value.into()]);
                }
            }
            Outcome::ok(t, common)
        }
        Command::ForelliRudin { n, s, t, rho, tol, common } => {
            let growth = match forelli_rudin_growth(t) {
                Growth::Bounded => "bounded".to_string(),
                Growth::Log => "log".to_string(),
                Growth::Power(e) => format!("power {e}"),
            };
            let mut tab = Table::new("forelli-rudin", common.seed, &["rho", "value", "terms", "tail_bound"])
                .param("n", n)
                .param("s", s)
                .param("t", t)
                .param("growth", growth);
            for r in parse_list(&rho)? {
                let v = forelli_rudin(n, r, s, t, tol)?;
                tab.push(vec![r.into(), v.value.into(), v.terms.into(), v.tail_bound.into()]);
            }
            Outcome::ok(tab, common)
        }
        Command::Classify { n, a, b, common } => {
            let spaces = |s: &str| -> CliResult<Vec<Bergman>> {
                Ok(parse_pairs(s)?.into_iter().map(|(p, al)| Bergman::new(p, al)).collect())
            };
            let sources = spaces(&a)?;
            let targets = match &b {
                Some(b) => spaces(b)?,
                None => sources.clone(),
            };
            let mut t = Table::new(
                "classify",
                common.seed,
                &["p_a", "alpha_a", "p_b", "alpha_b", "relation", "stretch_a", "lower_a", "upper_a"],
            )
            .param("n", n);
            for a in &sources {
                let st = lipschitz_stretch(a.p, a.alpha, n)?;
                for b in &targets {
                    let r = inclusion_bergman(n, *a, *b)?;
                    t.push(vec![
                        a.p.into(),
                        a.alpha.into(),
                        b.p.into(),
                        b.alpha.into(),
                        r.name().into(),
                        st.stretch.into(),
                        st.lower.into(),
                        st.upper.into(),
                    ]);
                }
            }
            Outcome::ok(t, common)
        }
        Command::Synthesize { p, alpha, b, atoms, delta, shells, common } => {
            let sp = SpaceParams::new(1, p, alpha)?;
            let lat = lattice_generate(1, delta, shells, common.seed)?;
            let mut r = rng(common.seed, 11);
            let coeffs: Vec<C64> = (0..atoms.min(lat.points.len()))
                .map(|_| C64::from_polar(0.5 + r.random::<f64>(), 2.0 * std::f64::consts::PI * r.random::<f64>()))
                .collect();
            let f = atomic_synthesize(&coeffs, &lat, b, &sp)?;
            let rep = synthesis_report(&f, &QuadratureSpec { seed: common.seed, ..QuadratureSpec::default() })?;
            let mut t = Table::new("synthesize", common.seed, &["atoms", "norm_pow", "lp_sum", "ratio"])
                .param("p", p)
                .param("alpha", alpha)
                .param("b", b)
                .param("delta", delta)
                .param("shells", shells)
                .param("lattice_points", lat.points.len());
            t.push(vec![coeffs.len().into(), rep.norm_pow.into(), rep.lp_sum.into(), rep.ratio.into()]);
            Outcome::ok(t, common)
        }
        Command::Verify { suite, common } => {
            let (table, ok) = verify(&suite, &SuiteConfig { seed: common.seed })?;
            Ok(Outcome { table, common, ok })
        }
    }
}
