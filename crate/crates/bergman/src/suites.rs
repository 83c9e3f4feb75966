//! Named verification suites. Every suite returns its checks in a fixed order and
//! draws randomness only from the configured seed, so reports are reproducible.

use std::f64::consts::PI;

use bergman_core::classify::{
    atomic_synthesize, find_witness, inclusion_bergman, lattice_generate, synthesis_report, Bergman, Relation,
};
use bergman_core::gamma::{monomial_mass, FracOpParams};
use bergman_core::geometry::{berezin_sup, carleson_constant, forelli_rudin, Atom, CarlesonGrid, DiscreteMeasure};
use bergman_core::kernels::{
    a_coeff, kernel_regime, kernel_series, reproduce_check, stirling_bridge_ratio, KernelSpec, Regime,
};
use bergman_core::lacunary::Decision;
use bergman_core::quad::disc_integral;
use bergman_core::radial::{rst, rst_inv};
use bergman_core::sample::{ball_point, rng};
use bergman_core::series::{log_kernel_series, power_kernel_series};
use bergman_core::spaces::{QuadratureSpec, SpaceParams};
use bergman_core::{BallPoint, MultiIndex, TaylorPolynomial, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::report::{Table, Value};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: bergman_core::DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn within(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        let pass = (observed - expected).abs() <= tolerance;
        Check { name: name.into(), expected, observed, tolerance, pass }
    }

    /// `observed ≤ bound`
    fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check { name: name.into(), expected: bound, observed, tolerance: 0.0, pass: observed <= bound }
    }

    /// `observed < bound`
    fn below(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check { name: name.into(), expected: bound, observed, tolerance: 0.0, pass: observed < bound }
    }

    /// `observed > bound`
    fn above(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check { name: name.into(), expected: bound, observed, tolerance: 0.0, pass: observed > bound }
    }

    fn count_zero(name: impl Into<String>, count: usize) -> Self {
        Check::within(name, 0.0, count as f64, 0.0)
    }
}

type SuiteFn = fn(&SuiteConfig) -> CliResult<Vec<Check>>;

/// Suites in report order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("operator-inverse", operator_inverse),
    ("kernel-mapping", kernel_mapping),
    ("kernel-reproduce", kernel_reproduce),
    ("monomial-mass", monomial_mass_suite),
    ("log-kernel", log_kernel),
    ("a-coefficients", a_coefficients),
    ("forelli-rudin-asymptotics", forelli_rudin_asymptotics),
    ("carleson-berezin", carleson_berezin),
    ("stirling-bridge", stirling_bridge),
    ("inclusion-coherence", inclusion_coherence),
    ("atomic-synthesis", atomic_synthesis),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

fn lookup(name: &str) -> Option<(&'static str, SuiteFn)> {
    SUITES.iter().find(|(n, _)| *n == name).copied()
}

/// Runs one suite (or `all`) and returns `(suite, check)` pairs.
pub fn run(name: &str, cfg: &SuiteConfig) -> CliResult<Vec<(&'static str, Check)>> {
    let selected: Vec<(&'static str, SuiteFn)> = if name == "all" {
        SUITES.to_vec()
    } else {
        vec![lookup(name).ok_or_else(|| CliError::UnknownSuite(name.to_string()))?]
    };
    let mut out = Vec::new();
    for (n, f) in selected {
        for c in f(cfg)? {
            out.push((n, c));
        }
    }
    Ok(out)
}

/// The verify report and whether every check passed.
pub fn verify(name: &str, cfg: &SuiteConfig) -> CliResult<(Table, bool)> {
    let checks = run(name, cfg)?;
    let mut t = Table::new("verify", cfg.seed, &["suite", "check", "expected", "observed", "tolerance", "pass"])
        .param("suite", name);
    let mut ok = true;
    for (s, c) in checks {
        ok &= c.pass;
        t.push(vec![
            s.into(),
            c.name.into(),
            c.expected.into(),
            c.observed.into(),
            c.tolerance.into(),
            Value::Bool(c.pass),
        ]);
    }
    Ok((t, ok))
}

fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * r.random::<f64>()
}

/// Random multi-index of order `k` in `n` variables.
fn random_index(r: &mut ChaCha8Rng, n: usize, k: u32) -> MultiIndex {
    let mut m = vec![0u32; n];
    for _ in 0..k {
        m[r.random_range(0..n)] += 1;
    }
    MultiIndex::new(m)
}

/// Up to 8 random terms of order `≤ degree`, coefficients in the unit square.
fn random_series(r: &mut ChaCha8Rng, n: usize, degree: u32) -> CliResult<TaylorPolynomial> {
    let count = r.random_range(1..=8);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let k = r.random_range(0..=degree);
        terms.push((random_index(r, n, k), C64::new(uniform(r, -1.0, 1.0), uniform(r, -1.0, 1.0))));
    }
    Ok(TaylorPolynomial::from_terms(n, degree, terms)?)
}

/// Largest coefficientwise relative difference.
fn max_rel_diff(f: &TaylorPolynomial, g: &TaylorPolynomial) -> f64 {
    let mut worst = 0.0f64;
    for (m, a) in f.terms().chain(g.terms()) {
        let (x, y) = (f.coefficient(m), g.coefficient(m));
        let scale = x.norm().max(y.norm());
        if scale > 0.0 {
            worst = worst.max((x - y).norm() / scale);
        }
        let _ = a;
    }
    worst
}

fn valid_pair(r: &mut ChaCha8Rng, n: usize) -> (f64, f64) {
    loop {
        let (s, t) = (uniform(r, -5.0, 5.0), uniform(r, -5.0, 5.0));
        if FracOpParams::is_valid(n, s, t) {
            return (s, t);
        }
    }
}

fn operator_inverse(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut r = rng(cfg.seed, 1);
    let (mut inv, mut semi) = (0.0f64, 0.0f64);
    let draws = 200;
    for _ in 0..draws {
        let n = r.random_range(1..=2usize);
        let degree = r.random_range(0..=12u32);
        let f = random_series(&mut r, n, degree)?;
        let (s, t) = valid_pair(&mut r, n);
        let p = FracOpParams::new(n, s, t)?;
        inv = inv.max(max_rel_diff(&f, &rst_inv(&rst(&f, &p)?, &p)?));
        let (lam, t2, s2) = loop {
            let (lam, t2) = valid_pair(&mut r, n);
            let s2 = uniform(&mut r, -5.0, 5.0);
            if FracOpParams::is_valid(n, lam + t2, s2) && FracOpParams::is_valid(n, lam, s2 + t2) {
                break (lam, t2, s2);
            }
        };
        let lhs = rst(&rst(&f, &FracOpParams::new(n, lam + t2, s2)?)?, &FracOpParams::new(n, lam, t2)?)?;
        let rhs = rst(&f, &FracOpParams::new(n, lam, s2 + t2)?)?;
        semi = semi.max(max_rel_diff(&lhs, &rhs));
    }
    Ok(vec![
        Check::within(format!("inverse of R^(s,t), {draws} draws, max rel diff"), 0.0, inv, 1e-11),
        Check::within(
            format!("composition R^(l,t)R^(l+t,s) = R^(l,s+t), {draws} draws, max rel diff"),
            0.0,
            semi,
            1e-11,
        ),
    ])
}

fn kernel_mapping(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut r = rng(cfg.seed, 2);
    let mut out = Vec::new();
    for i in 0..20 {
        let n = r.random_range(1..=2usize);
        let (s, t) = valid_pair(&mut r, n);
        let w = BallPoint::new(ball_point(&mut r, n, 0.9))?;
        let c = n as f64 + 1.0 + s;
        let f = power_kernel_series(c, &w, 40)?;
        let g = rst(&f, &FracOpParams::new(n, s, t)?)?;
        let h = power_kernel_series(c + t, &w, 40)?;
        out.push(Check::within(
            format!("draw {i}: n={n} s={s:.4} t={t:.4} max rel diff"),
            0.0,
            max_rel_diff(&g, &h),
            1e-10,
        ));
    }
    Ok(out)
}

fn regime_name(r: Regime) -> String {
    match r {
        Regime::Standard => "standard".into(),
        Regime::Log => "log".into(),
        Regime::FracNeg(d) => format!("frac-neg({d})"),
        Regime::IntNeg(d) => format!("int-neg({d})"),
    }
}

fn kernel_reproduce(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        let nf = n as f64;
        let cases = [
            ("standard", 0.0),
            ("standard", -1.5),
            ("log", -(nf + 1.0)),
            ("frac-neg", -(nf + 1.0) - 0.5),
            ("int-neg", -(nf + 2.0)),
        ];
        for (ci, (label, alpha)) in cases.iter().enumerate() {
            let regime = kernel_regime(n, *alpha);
            let name = regime_name(regime);
            out.push(Check::within(
                format!("n={n} alpha={alpha} regime is {label}"),
                1.0,
                if name.starts_with(label) { 1.0 } else { 0.0 },
                0.0,
            ));
            let spec = KernelSpec::new(n, *alpha)?;
            let mut r = rng(cfg.seed, 300 + 10 * n as u64 + ci as u64);
            let mut worst = 0.0f64;
            for _ in 0..10 {
                let f = random_series(&mut r, n, 6)?;
                for _ in 0..10 {
                    let w = BallPoint::new(ball_point(&mut r, n, 0.5))?;
                    worst = worst.max(reproduce_check(&f, &spec, &w, 60)?);
                }
            }
            out.push(Check::within(
                format!("n={n} {name} alpha={alpha}: max |<f,K_w> - f(w)| over 10x10"),
                0.0,
                worst,
                1e-10,
            ));
        }
    }
    Ok(out)
}

/// `∫|z^m|²(1−|z|²)^γ dv` by quadrature; for `n = 2` the inner `z_2` integral is a
/// scaled disc integral, leaving a weighted disc integral in `z_1`.
fn mass_by_quadrature(m: &MultiIndex, gamma_: f64) -> f64 {
    let c = m.components();
    let disc = |beta: f64, a: u32| disc_integral(beta, 1.0, 24, 8, |z| z.norm_sqr().powi(a as i32));
    match c.len() {
        1 => disc(gamma_, c[0]),
        _ => {
            let inner = disc(gamma_, c[1]);
            2.0 * inner * disc(f64::from(c[1]) + gamma_ + 1.0, c[0])
        }
    }
}

fn monomial_mass_suite(_cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        for gamma_ in [-0.5, 0.0, 2.0] {
            let mut worst = 0.0f64;
            for m in MultiIndex::up_to(n, 6) {
                let exact = monomial_mass(&m, gamma_, false)?;
                let q = mass_by_quadrature(&m, gamma_);
                worst = worst.max((exact - q).abs() / exact);
            }
            out.push(Check::within(format!("n={n} gamma={gamma_}: |m|<=6 max rel diff"), 0.0, worst, 1e-9));
        }
    }
    Ok(out)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `|m|!/(m!|m|)` as a reduced fraction.
fn log_coeff_fraction(m: &MultiIndex) -> (u128, u128) {
    let k = m.order();
    let fact = |x: u32| (1..=u128::from(x)).product::<u128>();
    let mut num = fact(k);
    for &c in m.components() {
        num /= fact(c);
    }
    let den = u128::from(k);
    let g = gcd(num, den);
    (num / g, den / g)
}

fn log_kernel(_cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let points: [&[f64]; 2] = [&[0.5], &[-0.5, 0.25]];
    for w in points {
        let n = w.len();
        let wp = BallPoint::new(w.iter().map(|&x| C64::new(x, 0.0)).collect())?;
        let series = log_kernel_series(&wp, 30);
        let via_spec = kernel_series(&KernelSpec::new(n, -(n as f64 + 1.0))?, &wp, 30)?;
        let (mut exact_misses, mut worst) = (0usize, 0.0f64);
        let mut worst_spec = 0.0f64;
        for m in MultiIndex::up_to(n, 30) {
            if m.order() == 0 {
                continue;
            }
            let (p, q) = log_coeff_fraction(&m);
            let mut wpow = 1.0;
            for (&c, &x) in m.components().iter().zip(w) {
                wpow *= x.powi(c as i32);
            }
            let want = (p as f64 / q as f64) * wpow;
            let got = series.coefficient(&m);
            if m.order() <= 12 {
                if got != C64::new(want, 0.0) {
                    exact_misses += 1;
                }
            } else {
                worst = worst.max((got - want).norm() / want.abs());
            }
            worst_spec = worst_spec.max((via_spec.coefficient(&m) - want).norm() / want.abs());
        }
        out.push(Check::count_zero(format!("n={n}: coefficients with |m|<=12 not bit-exact"), exact_misses));
        out.push(Check::within(format!("n={n}: 12<|m|<=30 max rel diff"), 0.0, worst, 1e-13));
        out.push(Check::within(format!("n={n}: regime kernel series max rel diff"), 0.0, worst_spec, 1e-13));
    }
    Ok(out)
}

fn a_coefficients(_cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for big_n in 0..=3u32 {
        let min_a = (big_n + 1..=200).map(|k| a_coeff(big_n, k)).fold(f64::INFINITY, f64::min);
        out.push(Check::above(format!("N={big_n}: min A_k over N<k<=200"), min_a, 0.0));
        let scaled: Vec<f64> = (50..=400u32).map(|k| f64::from(k).powi(big_n as i32 + 1) * a_coeff(big_n, k)).collect();
        let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
        let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
        out.push(Check::at_most(format!("N={big_n}: max/min of k^(N+1) A_k over 50<=k<=400"), hi / lo, 2.0));
    }
    Ok(out)
}

const FR_RHOS: [f64; 5] = [0.9, 0.95, 0.99, 0.995, 0.999];
const FR_TOL: f64 = 1e-12;

fn fr(n: usize, rho: f64, s: f64, t: f64) -> CliResult<f64> {
    Ok(forelli_rudin(n, rho, s, t, FR_TOL)?.value)
}

/// Least-squares slope of `log I` against `−log(1−ρ²)`.
pub fn forelli_rudin_slope(n: usize, s: f64, t: f64) -> CliResult<f64> {
    let xs: Vec<f64> = FR_RHOS.iter().map(|r| -(1.0 - r * r).ln()).collect();
    let ys = FR_RHOS.iter().map(|&r| fr(n, r, s, t).map(f64::ln)).collect::<CliResult<Vec<f64>>>()?;
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

fn forelli_rudin_asymptotics(_cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let (n, s) = (1usize, -0.9);
    for t in [0.5, 1.0, 2.0, 2.5] {
        let slope = forelli_rudin_slope(n, s, t)?;
        out.push(Check::within(format!("t={t} (n={n} s={s}): slope"), t, slope, 0.05 * t));
    }
    let t = -0.5;
    let (a, b, c) = (fr(n, 0.9, s, t)?, fr(n, 0.99, s, t)?, fr(n, 0.999, s, t)?);
    out.push(Check::at_most(format!("t={t} (n={n} s={s}): I(0.999)-I(0.99) vs 0.05 I(0.99)"), c - b, 0.05 * b));
    out.push(Check::below(format!("t={t} (n={n} s={s}): increment 0.99->0.999 vs 0.9->0.99"), c - b, b - a));
    let s0 = 0.0;
    let l = |rho: f64| -> CliResult<f64> { Ok(fr(n, rho, s0, 0.0)? / -(1.0 - rho * rho).ln()) };
    let (l1, l2) = (l(0.99)?, l(0.999)?);
    out.push(Check::within(format!("t=0 (n={n} s={s0}): I/(-log(1-rho^2)) at 0.999 over 0.99"), 1.0, l2 / l1, 0.10));
    Ok(out)
}

/// Up to 40 atoms with `1 − |z|` log-uniform in `[1e−3, 1]`.
fn random_measure(seed: u64, stream: u64) -> CliResult<DiscreteMeasure> {
    let mut r = rng(seed, stream);
    let count = r.random_range(1..=40);
    let mut atoms = Vec::with_capacity(count);
    for _ in 0..count {
        let rad = 1.0 - 10f64.powf(-3.0 * r.random::<f64>());
        let th = uniform(&mut r, 0.0, 2.0 * PI);
        let z = BallPoint::new(vec![C64::from_polar(rad, th)])?;
        atoms.push(Atom { z, mass: uniform(&mut r, 0.05, 1.0) });
    }
    Ok(DiscreteMeasure::new(1, atoms)?)
}

fn carleson_berezin(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let (n, alpha, s) = (1usize, 0.0, 1.0);
    let grid = CarlesonGrid::standard(n, cfg.seed);
    let factor = 2f64.powf(n as f64 + 1.0 + alpha + s);
    let mut out = Vec::new();
    for i in 0..20u64 {
        let mu = random_measure(cfg.seed, 800 + i)?;
        let c = carleson_constant(&mu, alpha, &grid)?.value;
        let b = berezin_sup(&mu, s, alpha, &grid)?.value;
        out.push(Check::below(
            format!("measure {i} ({} atoms): carleson constant vs 2^(n+1+alpha+s) berezin sup", mu.atoms().len()),
            c,
            factor * b,
        ));
    }
    Ok(out)
}

fn stirling_bridge(_cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        for alpha in [-3.0, 0.0, 2.0] {
            let spec = KernelSpec::new(n, alpha)?;
            let r200 = stirling_bridge_ratio(&spec, 200)?;
            let r400 = stirling_bridge_ratio(&spec, 400)?;
            out.push(Check::within(format!("n={n} alpha={alpha}: ratio(200)/ratio(400)"), 1.0, r200 / r400, 0.01));
        }
    }
    Ok(out)
}

/// 50 parameter pairs `(p, α)`, `p` log-uniform in `[1/4, 4]`, `α ∈ [−3, 3]`.
pub fn parameter_sample(seed: u64) -> Vec<Bergman> {
    let mut r = rng(seed, 10);
    (0..50).map(|_| Bergman::new(4f64.powf(uniform(&mut r, -1.0, 1.0)), uniform(&mut r, -3.0, 3.0))).collect()
}

fn inclusion_coherence(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let sample = parameter_sample(cfg.seed);
    let k = sample.len();
    let mut out = Vec::new();
    for n in 1..=2usize {
        let mut rel = vec![vec![Relation::Equal; k]; k];
        for i in 0..k {
            for j in 0..k {
                rel[i][j] = inclusion_bergman(n, sample[i], sample[j])?;
            }
        }
        let (mut anti, mut trans, mut equal) = (0usize, 0usize, 0usize);
        for i in 0..k {
            for j in 0..k {
                if rel[i][j] != rel[j][i].reverse() {
                    anti += 1;
                }
                if i != j && rel[i][j] == Relation::Equal {
                    equal += 1;
                }
                if rel[i][j] != Relation::StrictSubset {
                    continue;
                }
                trans += rel[j]
                    .iter()
                    .zip(&rel[i])
                    .filter(|(jl, il)| **jl == Relation::StrictSubset && **il != Relation::StrictSubset)
                    .count();
            }
        }
        out.push(Check::count_zero(format!("n={n}: antisymmetry violations over {k}x{k}"), anti));
        out.push(Check::count_zero(format!("n={n}: transitivity violations"), trans));
        out.push(Check::count_zero(format!("n={n}: distinct pairs reported equal"), equal));
    }
    // witnesses for n = 1: walk disjoint pairs, then their reversals
    let order: Vec<(usize, usize)> =
        (0..k / 2).map(|i| (2 * i, 2 * i + 1)).chain((0..k / 2).map(|i| (2 * i + 1, 2 * i))).collect();
    let mut found = 0;
    for (i, j) in order {
        if found == 10 {
            break;
        }
        let (a, b) = (sample[i], sample[j]);
        if matches!(inclusion_bergman(1, a, b)?, Relation::StrictSubset | Relation::Equal) {
            continue;
        }
        found += 1;
        let w = find_witness(a, b).ok_or(bergman_core::Error::InvalidParams("no witness for a non-inclusion"))?;
        let sa = SpaceParams::new(1, a.p, a.alpha)?;
        let sb = SpaceParams::new(1, b.p, b.alpha)?;
        let ok = w.member(&sa)? == Decision::Member && w.member(&sb)? == Decision::NonMember;
        out.push(Check::within(
            format!(
                "A({:.4},{:.4}) not in A({:.4},{:.4}): {} witness in source, not in target",
                a.p,
                a.alpha,
                b.p,
                b.alpha,
                w.id()
            ),
            1.0,
            if ok { 1.0 } else { 0.0 },
            0.0,
        ));
    }
    out.push(Check::within("decided non-inclusions with witnesses", 10.0, found as f64, 0.0));
    Ok(out)
}

/// Ratios `‖f‖^p/Σ|c_k|^p` for three seeded 100-atom syntheses.
pub fn synthesis_ratios(p: f64, alpha: f64, b: f64, seed: u64) -> CliResult<Vec<f64>> {
    let sp = SpaceParams::new(1, p, alpha)?;
    let q = QuadratureSpec::default();
    let mut ratios = Vec::new();
    for i in 0..3u64 {
        let s = seed.wrapping_add(i);
        let lat = lattice_generate(1, 0.5, 4, s)?;
        if lat.points.len() < 100 {
            return Err(bergman_core::Error::InvalidParams("lattice has fewer than 100 points").into());
        }
        let mut r = rng(s, 11);
        let coeffs: Vec<C64> =
            (0..100).map(|_| C64::from_polar(uniform(&mut r, 0.5, 1.5), uniform(&mut r, 0.0, 2.0 * PI))).collect();
        let f = atomic_synthesize(&coeffs, &lat, b, &sp)?;
        ratios.push(synthesis_report(&f, &q)?.ratio);
    }
    Ok(ratios)
}

fn atomic_synthesis(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for (p, b) in [(0.5, 5.0), (1.0, 3.0)] {
        let alpha = 0.0;
        let ratios = synthesis_ratios(p, alpha, b, cfg.seed)?;
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let c = 1.2 * mean;
        for (i, r) in ratios.iter().enumerate() {
            out.push(Check::at_most(format!("p={p} alpha={alpha} b={b} seed+{i}: ||f||^p / sum|c|^p vs C"), *r, c));
            out.push(Check::within(format!("p={p} alpha={alpha} b={b} seed+{i}: ratio over mean"), 1.0, r / mean, 0.2));
        }
    }
    Ok(out)
}
