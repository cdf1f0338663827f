//! `lext`: exact linear-extension counts, Stanley-equality verdicts, poset
//! gadgets, continued fractions and order-polytope volumes.
//!
//! Exit status: 0 when a verdict is true (or nothing was decided), 1 when a
//! verdict is false, 2 on any error.

use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use lext_core::cf::{
    cf_expand, cf_value, find_good_m, find_good_m_with_slack, quotient_sum, tail_fraction,
    yao_knuth_asymptotic, yao_knuth_mean,
};
use lext_core::corpus::seeded_poset;
use lext_core::decide::{
    esta0_decide_with, esta1_decide_with, esta_bruteforce_with, evaluate_quad_with, hardness_witness,
    verrle_to_quad, EqualityVerdict, QuadInstance, TranscriptEntry, VerInstance,
};
use lext_core::gadget::{
    cf_poset, cf_poset_reciprocal, crle_to_flat, ensure_bounded, flat_to_stanley, m_counts, mediant_gadget,
    mediant_identities, pad_fixed, plus_one, quad_to_crle, reciprocal_plus_one, GadgetOutput,
};
use lext_core::geometry::constraints::ConstraintSystem;
use lext_core::geometry::volume::{
    af_defect_with, mixed_volume_with, stanley_af_instance_with, verify_sta_pol_with, volume_with,
};
use lext_core::geometry::{chain_polytope, is_totally_unimodular, order_polytope, slices, vertices_with};
use lext_core::linext::{count_pinned_with, count_with, flat_check_with, rho_with, stanley_defect_with};
use lext_core::selftest::{self, Level};
use lext_core::{Caps, CountInstance, Poset};

#[derive(Parser)]
#[command(name = "lext", version, about = "Exact linear-extension toolkit", propagate_version = true)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RunConfig {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "LEXT_SEED", default_value_t = 1)]
    seed: u64,
    /// Largest poset accepted by the counting DP.
    #[arg(long, global = true, env = "LEXT_CAP_N", default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_n: u64,
    /// Largest intrinsic dimension for volumes.
    #[arg(long, global = true, env = "LEXT_CAP_DIM", default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    cap_dim: u64,
    /// Largest square minor in the unimodularity check.
    #[arg(long, global = true, env = "LEXT_CAP_MINOR", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    cap_minor: u64,
    /// Largest poset whose extensions may be listed one by one.
    #[arg(long, global = true, env = "LEXT_CAP_ENUM", default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    cap_enum: u64,
    /// Largest number of order ideals in one DP layer.
    #[arg(long, global = true, env = "LEXT_CAP_IDEALS", default_value_t = 4_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap_ideals: u64,
    /// Largest number of free coordinates in 0/1 vertex enumeration.
    #[arg(long, global = true, env = "LEXT_CAP_FREE", default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    cap_free: u64,
    #[arg(long, global = true, env = "LEXT_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Repeat for more diagnostics on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

impl RunConfig {
    fn caps(&self) -> Caps {
        Caps {
            max_elements: self.cap_n as usize,
            enumerate_n: self.cap_enum as usize,
            ideal_budget: self.cap_ideals as usize,
            minor: self.cap_minor as usize,
            dim: self.cap_dim as usize,
            vertex_free: self.cap_free as usize,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of linear extensions e(P).
    Count(PosetIn),
    /// N_{z,c}(P, x, a), or N_{z,c}(P) without --x/--a.
    CountFixed(InstIn),
    /// ρ(P, x) = e(P)/e(P − x).
    Rho {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        x: usize,
    },
    /// Stanley defect N(a)² − N(a−1)·N(a+1).
    Defect(InstIn),
    /// Whether N(a) = N(a+1).
    Flat(InstIn),
    /// Random poset, deterministic per seed.
    RandomPoset {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// Shuffle labels instead of keeping a natural labeling.
        #[arg(long)]
        shuffle: bool,
    },
    #[command(subcommand)]
    Gadget(GadgetCmd),
    #[command(subcommand)]
    Cf(CfCmd),
    #[command(subcommand)]
    Poly(PolyCmd),
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Re-verifies every identity the library relies on.
    Selftest {
        #[arg(long, default_value = "quick")]
        level: Level,
    },
}

#[derive(Args)]
struct PosetIn {
    /// JSON poset (or instance) file; `-` reads standard input.
    #[arg(long, short)]
    input: String,
}

#[derive(Args)]
struct InstIn {
    /// JSON poset or instance file; `-` reads standard input.
    #[arg(long, short)]
    input: String,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    /// Fixed elements as `z:c,z:c`.
    #[arg(long)]
    fixed: Option<String>,
}

#[derive(Args)]
struct PairIn {
    #[arg(long, short)]
    input: String,
    #[arg(long)]
    x: usize,
    /// The second poset.
    #[arg(long)]
    other: String,
    #[arg(long)]
    y: usize,
}

#[derive(Args)]
struct QuadIn {
    /// Four poset files.
    #[arg(long, short, num_args = 4, required = true)]
    input: Vec<String>,
    /// Four marked minimal elements, comma separated.
    #[arg(long)]
    xs: String,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Pad with isolated elements pinned above everything.
    Pad {
        #[command(flatten)]
        inst: InstIn,
        #[arg(long)]
        k: usize,
    },
    /// Adjoin a global bottom and top.
    Bound(InstIn),
    /// Flatness to Stanley equality with two more fixed elements.
    Flat2sta(InstIn),
    /// Two ratio posets to one flatness instance.
    Crle2flat(PairIn),
    Mediant(PairIn),
    /// ρ ↦ 1 + 1/ρ
    Recip {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        x: usize,
    },
    /// ρ ↦ 1 + ρ
    Plus1 {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        x: usize,
    },
    Quad2crle(QuadIn),
    /// Width-two poset with ρ = [a₀; a₁, …].
    Cfposet {
        #[arg(long)]
        quotients: String,
        /// Read the quotients as [0; a₁, …] = 1/ρ.
        #[arg(long)]
        reciprocal: bool,
    },
}

#[derive(Subcommand)]
enum CfCmd {
    /// Quotients of p/q.
    Expand { p: String, q: String },
    /// Value of a quotient list.
    Value { quotients: String },
    /// S_A(m), the quotient sum of m/A.
    Qsum { m: u64, a: u64 },
    /// Mean of S_n over [n] and the heavy-tail fraction.
    Yaoknuth { n: u64 },
    /// m with small quotient sums for both A and B.
    Findm {
        a: u64,
        b: u64,
        /// Fixed slack instead of escalating.
        #[arg(long)]
        slack: Option<f64>,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// H-description of the order polytope.
    Order(PosetIn),
    /// H-description of the chain polytope.
    Chain(PosetIn),
    /// Slices cut out by fixed elements.
    Slices {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        z: String,
    },
    /// Total unimodularity of a constraint matrix.
    Tu {
        #[arg(long, short)]
        input: String,
    },
    /// Volume of a 0/1 constraint system.
    Volume {
        #[arg(long, short)]
        input: String,
    },
    /// Mixed volume of `[{"system": …, "mult": m}, …]`.
    Mixed {
        #[arg(long, short)]
        input: String,
    },
    /// Mixed volume of slices against the fixed-element count.
    Stapol {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        z: String,
        #[arg(long)]
        c: String,
    },
    /// Alexandrov–Fenchel defect of the slices of a Stanley instance.
    Afdefect(InstIn),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KMode {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Brute,
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Stanley equality.
    Sta {
        #[command(flatten)]
        inst: InstIn,
        #[arg(long, value_enum, default_value_t = KMode::Brute)]
        k: KMode,
    },
    /// ρ₁ρ₂ = ρ₃ρ₄?
    Quad(QuadIn),
    /// ρ(P, x) = A/B? via the quadruple reduction.
    Verrle {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        target: String,
    },
    /// A Stanley instance with two fixed elements answering ρ(P, x) = A/B.
    Witness {
        #[command(flatten)]
        input: PosetIn,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        target: String,
        /// Also decide the witness by exact counting.
        #[arg(long)]
        verify: bool,
    },
}

/// What a command produced: a JSON value, its plain rendering, and
/// optionally a verdict that sets the exit status.
struct Output {
    json: Value,
    plain: String,
    verdict: Option<bool>,
}

impl Output {
    fn info(json: Value, plain: impl Into<String>) -> Self {
        Output {
            json,
            plain: plain.into(),
            verdict: None,
        }
    }

    fn verdict(json: Value, plain: impl Into<String>, v: bool) -> Self {
        Output {
            json,
            plain: plain.into(),
            verdict: Some(v),
        }
    }
}

fn read_text(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_json(path: &str) -> anyhow::Result<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing JSON from {path}"))
}

/// Accepts a bare poset or an object with a `"poset"` field.
fn poset_of(v: &Value) -> anyhow::Result<Poset> {
    let p = v.get("poset").unwrap_or(v);
    Ok(Poset::parse_json(&p.to_string())?)
}

fn read_poset(path: &str) -> anyhow::Result<Poset> {
    poset_of(&read_json(path)?)
}

fn parse_list(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("bad integer {t:?}")))
        .collect()
}

fn parse_fixed(s: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (z, c) = t.split_once(':').ok_or_else(|| anyhow!("fixed pair {t:?} is not z:c"))?;
            Ok((z.trim().parse()?, c.trim().parse()?))
        })
        .collect()
}

fn parse_target(s: &str) -> anyhow::Result<(u64, u64)> {
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<u64>()?, b.trim().parse::<u64>()?),
        None => (s.trim().parse::<u64>()?, 1),
    };
    if b == 0 {
        bail!("zero denominator in {s:?}");
    }
    let g = num_integer_gcd(a, b);
    Ok((a / g, b / g))
}

fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Instance fields from flags, falling back to the input object's own.
struct RawInstance {
    poset: Poset,
    fixed: Vec<(usize, usize)>,
    x: Option<usize>,
    a: Option<usize>,
}

fn read_raw(inst: &InstIn) -> anyhow::Result<RawInstance> {
    let v = read_json(&inst.input)?;
    let poset = poset_of(&v)?;
    let field = |k: &str| v.get(k).and_then(Value::as_u64).map(|u| u as usize);
    let fixed = match &inst.fixed {
        Some(s) => parse_fixed(s)?,
        None => match v.get("fixed") {
            Some(f) => serde_json::from_value::<Vec<(usize, usize)>>(f.clone()).context("instance \"fixed\"")?,
            None => Vec::new(),
        },
    };
    Ok(RawInstance {
        poset,
        fixed,
        x: inst.x.or_else(|| field("x")),
        a: inst.a.or_else(|| field("a")),
    })
}

fn read_instance(inst: &InstIn) -> anyhow::Result<CountInstance> {
    let r = read_raw(inst)?;
    let x = r.x.ok_or_else(|| anyhow!("--x is required"))?;
    let a = r.a.ok_or_else(|| anyhow!("--a is required"))?;
    Ok(CountInstance::new(r.poset, r.fixed, x, a)?)
}

fn instance_json(i: &CountInstance) -> Value {
    json!({
        "poset": i.poset.to_json(),
        "fixed": i.fixed,
        "x": i.x,
        "a": i.a,
    })
}

fn frac(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn gadget_out(g: &GadgetOutput) -> Output {
    let plain = format!(
        "{} on {} elements, marks {:?}",
        g.provenance,
        g.len(),
        g.marks
    );
    Output::info(serde_json::to_value(g.to_json()).expect("serializable"), plain)
}

fn verdict_out(v: &EqualityVerdict) -> Output {
    let method = serde_json::to_value(v.method).expect("serializable");
    let json = json!({
        "equal": v.equal,
        "counts": v.counts.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "defect": v.defect.to_string(),
        "method": method,
        "note": v.note,
    });
    let plain = format!(
        "{} (N = {}, {}, {}; defect {})",
        if v.equal { "equal" } else { "not equal" },
        v.counts[0],
        v.counts[1],
        v.counts[2],
        v.defect
    );
    Output::verdict(json, plain, v.equal)
}

fn transcript_json(t: &[TranscriptEntry]) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn quad_of(q: &QuadIn) -> anyhow::Result<QuadInstance> {
    let xs = parse_list(&q.xs)?;
    if xs.len() != 4 {
        bail!("--xs needs four elements");
    }
    let ps: Vec<Poset> = q.input.iter().map(|p| read_poset(p)).collect::<anyhow::Result<_>>()?;
    let parts: [(Poset, usize); 4] = std::array::from_fn(|i| (ps[i].clone(), xs[i]));
    Ok(QuadInstance::new(parts)?)
}

fn systems_json(s: &[ConstraintSystem]) -> Value {
    serde_json::to_value(s).expect("serializable")
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let caps = cli.cfg.caps();
    let seed = cli.cfg.seed;
    Ok(match &cli.cmd {
        Cmd::Count(i) => {
            let e = count_with(&read_poset(&i.input)?, &caps)?;
            Output::info(json!({ "count": e.to_string() }), e.to_string())
        }
        Cmd::CountFixed(i) => {
            let r = read_raw(i)?;
            let n = match (r.x, r.a) {
                (Some(x), Some(a)) => {
                    let inst = CountInstance::new(r.poset, r.fixed, x, a)?;
                    inst.n_at_with(a as i64, &caps)?
                }
                (None, None) => count_pinned_with(&r.poset, &r.fixed, &caps)?,
                _ => bail!("give both --x and --a, or neither"),
            };
            Output::info(json!({ "count": n.to_string() }), n.to_string())
        }
        Cmd::Rho { input, x } => {
            let r = rho_with(&read_poset(&input.input)?, *x, &caps)?;
            Output::info(json!({ "rho": frac(&r) }), frac(&r))
        }
        Cmd::Defect(i) => {
            let inst = read_instance(i)?;
            let d = stanley_defect_with(&inst, &caps)?;
            let [lo, mid, hi] = inst.neighbourhood(&caps)?;
            Output::info(
                json!({ "defect": d.to_string(), "counts": [lo.to_string(), mid.to_string(), hi.to_string()] }),
                d.to_string(),
            )
        }
        Cmd::Flat(i) => {
            let inst = read_instance(i)?;
            let f = flat_check_with(&inst, &caps)?;
            Output::verdict(json!({ "flat": f }), f.to_string(), f)
        }
        Cmd::RandomPoset { n, density, shuffle } => {
            if !(0.0..=1.0).contains(density) {
                bail!("density must lie in [0, 1]");
            }
            let p = seeded_poset(seed, *n, *density, *shuffle);
            let j = serde_json::to_value(p.to_json())?;
            Output::info(j.clone(), j.to_string())
        }
        Cmd::Gadget(g) => gadget(g, &caps)?,
        Cmd::Cf(c) => cf(c, seed)?,
        Cmd::Poly(p) => poly(p, &caps)?,
        Cmd::Decide(d) => decide(d, seed, &caps)?,
        Cmd::Selftest { level } => {
            let report = selftest::run(*level, seed);
            let plain = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{} {} ({} checked, {} ms){}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.checked,
                        c.millis,
                        c.failure.as_ref().map(|f| format!(": {f}")).unwrap_or_default()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::verdict(serde_json::to_value(&report)?, plain, report.passed())
        }
    })
}

fn gadget(g: &GadgetCmd, caps: &Caps) -> anyhow::Result<Output> {
    Ok(match g {
        GadgetCmd::Pad { inst, k } => {
            let out = pad_fixed(&read_instance(inst)?, *k)?;
            Output::info(instance_json(&out), format!("{} fixed elements", out.k()))
        }
        GadgetCmd::Bound(i) => {
            let b = ensure_bounded(&read_instance(i)?);
            let mut j = instance_json(&b.instance);
            j["marks"] = json!({ "bottom": b.bottom, "top": b.top });
            Output::info(j, format!("bounded instance on {} elements", b.instance.n()))
        }
        GadgetCmd::Flat2sta(i) => {
            let inst = read_instance(i)?;
            let out = flat_to_stanley(&inst)?;
            let m = m_counts(&inst, caps)?;
            let mut j = instance_json(&out.instance);
            j["marks"] = json!({ "u": out.u, "v": out.v, "w": out.w });
            j["params"] = json!({ "ell": out.ell });
            j["m_counts"] = json!({ "m1": m.m1.to_string(), "m2": m.m2.to_string(), "m3": m.m3.to_string() });
            Output::info(j, format!("instance on {} elements, b = {}", out.instance.n(), out.instance.a))
        }
        GadgetCmd::Crle2flat(pi) => {
            let g = crle_to_flat(&read_poset(&pi.input)?, pi.x, &read_poset(&pi.other)?, pi.y)?;
            gadget_out(&g)
        }
        GadgetCmd::Mediant(pi) => {
            let (p, q) = (read_poset(&pi.input)?, read_poset(&pi.other)?);
            let g = mediant_gadget(&p, pi.x, &q, pi.y)?;
            let ids = mediant_identities(&p, pi.x, &q, pi.y, caps)?;
            let mut out = gadget_out(&g);
            out.json["identities"] = json!({
                "e_r": ids.e_r.to_string(),
                "e_r_predicted": ids.e_r_predicted.to_string(),
                "e_r_minus_z": ids.e_r_minus_z.to_string(),
                "e_r_minus_z_predicted": ids.e_r_minus_z_predicted.to_string(),
                "hold": ids.hold(),
            });
            out
        }
        GadgetCmd::Recip { input, x } => gadget_out(&reciprocal_plus_one(&read_poset(&input.input)?, *x)?),
        GadgetCmd::Plus1 { input, x } => gadget_out(&plus_one(&read_poset(&input.input)?, *x)?),
        GadgetCmd::Quad2crle(q) => {
            let quad = quad_of(q)?;
            let [a, b, c, d] = &quad.parts;
            let out = quad_to_crle([(&a.0, a.1), (&b.0, b.1), (&c.0, c.1), (&d.0, d.1)])?;
            let json = json!({
                "p": out.p.to_json(),
                "q": out.q.to_json(),
                "relabeled": out.relabeled,
            });
            Output::info(json, format!("P on {} elements, Q on {}", out.p.len(), out.q.len()))
        }
        GadgetCmd::Cfposet { quotients, reciprocal } => {
            let q: Vec<u64> = parse_list(quotients)?.into_iter().map(|v| v as u64).collect();
            let g = if *reciprocal {
                cf_poset_reciprocal(&q)?
            } else {
                cf_poset(&q)?
            };
            gadget_out(&g)
        }
    })
}

fn big(s: &str) -> anyhow::Result<num_bigint::BigUint> {
    s.trim().parse().with_context(|| format!("bad nonnegative integer {s:?}"))
}

fn cf(c: &CfCmd, seed: u64) -> anyhow::Result<Output> {
    Ok(match c {
        CfCmd::Expand { p, q } => {
            let e = cf_expand(&big(p)?, &big(q)?)?;
            let qs: Vec<String> = e.quotients.iter().map(ToString::to_string).collect();
            Output::info(
                json!({ "quotients": qs, "value": frac(&e.value), "qsum": e.qsum.to_string() }),
                format!("[{}] = {}", qs.join(", "), frac(&e.value)),
            )
        }
        CfCmd::Value { quotients } => {
            let q: Vec<num_bigint::BigUint> = quotients.split(',').map(big).collect::<anyhow::Result<_>>()?;
            let v = cf_value(&q)?;
            Output::info(json!({ "value": frac(&v) }), frac(&v))
        }
        CfCmd::Qsum { m, a } => {
            let s = quotient_sum(*m, *a)?;
            Output::info(json!({ "qsum": s }), s.to_string())
        }
        CfCmd::Yaoknuth { n } => {
            let mean = yao_knuth_mean(*n)?;
            let approx = num_traits::ToPrimitive::to_f64(&mean).unwrap_or(f64::NAN);
            let asym = yao_knuth_asymptotic(*n);
            let tail = tail_fraction(*n);
            Output::info(
                json!({ "mean": frac(&mean), "mean_approx": approx, "asymptotic": asym, "tail_fraction": tail }),
                format!("mean {approx:.3} (asymptotic {asym:.3}), tail fraction {tail:.4}"),
            )
        }
        CfCmd::Findm { a, b, slack } => {
            let g = match slack {
                Some(s) => find_good_m_with_slack(*a, *b, seed, *s)?,
                None => find_good_m(*a, *b, seed)?,
            };
            Output::info(serde_json::to_value(&g)?, format!("m = {} (S_A = {}, S_B = {}, slack {})", g.m, g.s_a, g.s_b, g.slack))
        }
    })
}

fn read_system(path: &str) -> anyhow::Result<ConstraintSystem> {
    let s: ConstraintSystem = serde_json::from_value(read_json(path)?).context("constraint system")?;
    s.validate()?;
    Ok(s)
}

fn poly(p: &PolyCmd, caps: &Caps) -> anyhow::Result<Output> {
    Ok(match p {
        PolyCmd::Order(i) => {
            let s = order_polytope(&read_poset(&i.input)?);
            Output::info(serde_json::to_value(&s)?, format!("{} inequalities", s.rows()))
        }
        PolyCmd::Chain(i) => {
            let s = chain_polytope(&read_poset(&i.input)?);
            Output::info(serde_json::to_value(&s)?, format!("{} inequalities", s.rows()))
        }
        PolyCmd::Slices { input, z } => {
            let s = slices(&read_poset(&input.input)?, &parse_list(z)?)?;
            Output::info(systems_json(&s), format!("{} slices", s.len()))
        }
        PolyCmd::Tu { input } => {
            let s = read_system(input)?;
            let tu = is_totally_unimodular(&s.a, caps.minor)?;
            Output::verdict(json!({ "totally_unimodular": tu }), tu.to_string(), tu)
        }
        PolyCmd::Volume { input } => {
            let v = vertices_with(&read_system(input)?, caps)?;
            let r = volume_with(&v, caps)?;
            Output::info(
                json!({ "volume": frac(&r.volume), "dim": r.dim, "degenerate": r.degenerate }),
                frac(&r.volume),
            )
        }
        PolyCmd::Mixed { input } => {
            let entries = match read_json(input)? {
                Value::Array(a) => a,
                _ => bail!("expected an array of {{\"system\", \"mult\"}} objects"),
            };
            let mut bodies = Vec::new();
            for e in entries {
                let s: ConstraintSystem = serde_json::from_value(e["system"].clone()).context("entry \"system\"")?;
                let m = e["mult"].as_u64().ok_or_else(|| anyhow!("entry \"mult\" must be a nonnegative integer"))?;
                bodies.push((vertices_with(&s, caps)?, m as usize));
            }
            let v = mixed_volume_with(&bodies, caps)?;
            Output::info(json!({ "mixed_volume": frac(&v) }), frac(&v))
        }
        PolyCmd::Stapol { input, z, c } => {
            let s = verify_sta_pol_with(&read_poset(&input.input)?, &parse_list(z)?, &parse_list(c)?, caps)?;
            Output::verdict(
                json!({ "lhs": frac(&s.lhs), "rhs": frac(&s.rhs), "equal": s.equal }),
                format!("{} {} {}", frac(&s.lhs), if s.equal { "=" } else { "≠" }, frac(&s.rhs)),
                s.equal,
            )
        }
        PolyCmd::Afdefect(i) => {
            let inst = read_instance(i)?;
            let af = stanley_af_instance_with(&inst, caps)?;
            let d = af_defect_with(&af.k, &af.l, &af.qs, caps)?;
            let phi = stanley_defect_with(&inst, caps)?;
            let s = num_rational::BigRational::from_integer(BigInt::from(af.scale.clone()));
            let scaled = &d.delta * &s * &s;
            let zero = num_traits::Zero::is_zero(&d.delta);
            Output::verdict(
                json!({
                    "v_kl": frac(&d.v_kl),
                    "v_kk": frac(&d.v_kk),
                    "v_ll": frac(&d.v_ll),
                    "delta": frac(&d.delta),
                    "scaled_delta": frac(&scaled),
                    "stanley_defect": phi.to_string(),
                }),
                format!("delta {} (scaled {}, Stanley defect {})", frac(&d.delta), frac(&scaled), phi),
                zero,
            )
        }
    })
}

fn decide(d: &DecideCmd, seed: u64, caps: &Caps) -> anyhow::Result<Output> {
    Ok(match d {
        DecideCmd::Sta { inst, k } => {
            let i = read_instance(inst)?;
            let v = match k {
                KMode::Brute => esta_bruteforce_with(&i, caps)?,
                KMode::Zero => {
                    if i.k() != 0 {
                        bail!("--k 0 takes no fixed elements, got {}", i.k());
                    }
                    esta0_decide_with(&i.poset, i.x, i.a, caps)?
                }
                KMode::One => {
                    let [(z, c)] = i.fixed[..] else {
                        bail!("--k 1 takes exactly one fixed element, got {}", i.k());
                    };
                    esta1_decide_with(&i.poset, z, c, i.x, i.a, caps)?
                }
            };
            if let Some(n) = &v.note {
                eprintln!("warning: {n}");
            }
            verdict_out(&v)
        }
        DecideCmd::Quad(q) => {
            let quad = quad_of(q)?;
            let v = evaluate_quad_with(&quad, caps)?;
            Output::verdict(json!({ "equal": v }), v.to_string(), v)
        }
        DecideCmd::Verrle { input, x, target } => {
            let (a, b) = parse_target(target)?;
            let inst = VerInstance::new(read_poset(&input.input)?, *x, a, b)?;
            let vq = verrle_to_quad(&inst, seed)?;
            let v = evaluate_quad_with(&vq.quad, caps)?;
            let json = json!({
                "equal": v,
                "k": vq.k,
                "a_prime": vq.a_prime,
                "b_prime": vq.b_prime,
                "good_m": vq.good_m,
                "transcript": transcript_json(&vq.transcript),
            });
            Output::verdict(json, v.to_string(), v)
        }
        DecideCmd::Witness { input, x, target, verify } => {
            let (a, b) = parse_target(target)?;
            let inst = VerInstance::new(read_poset(&input.input)?, *x, a, b)?;
            let w = hardness_witness(&inst, seed)?;
            let mut json = json!({
                "instance": instance_json(&w.instance),
                "size_bound": w.size_bound,
                "constant": w.constant,
                "transcript": transcript_json(&w.transcript),
            });
            let plain = format!("instance on {} elements with {} fixed", w.instance.n(), w.instance.k());
            if *verify {
                let v = esta_bruteforce_with(&w.instance, caps)?;
                json["verdict"] = verdict_out(&v).json;
                Output::verdict(json, format!("{plain}: {}", if v.equal { "equal" } else { "not equal" }), v.equal)
            } else {
                Output::info(json, plain)
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.cfg.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Format::Plain => out.plain,
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            if cli.cfg.verbose > 0 {
                eprintln!("seed {}", cli.cfg.seed);
            }
            match out.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
