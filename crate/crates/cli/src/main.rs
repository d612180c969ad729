//! `ncann`: normal forms, annihilators and claim checks from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ncann_core::annihilator::DEFAULT_SLICE_LIMIT;
use ncann_core::exhaustive::{exhaustive_zero_divisor_search, ExhaustiveSpace};
use ncann_core::report::DEFAULT_SEED;
use ncann_core::{
    annihilator, armendariz_check, builtin_by_name, check_basis_claim_with, claim_ledger,
    parse_endomorphism, parse_poly, parse_presentation, skew_mul_poly, skew_mul_series,
    strong_armendariz_check, zip_witness_search, AnnQuery, Bounds, BuiltinName, CheckReport,
    Endomorphism, Error, LedgerConfig, Presentation, SkewPoly, SliceKind, TruncSeries, Verdict,
};

#[derive(Parser)]
#[command(
    name = "ncann",
    version,
    about = "Finitely presented algebras over GF(p): normal forms, annihilators, claim checks"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// Built-in name (cedo_3_1, armendariz_3_3, section4) or a DSL file.
    #[arg(long)]
    ring: String,
    /// Field characteristic for built-in rings.
    #[arg(short = 'p', long = "field", default_value_t = 2)]
    p: u64,
    /// Endomorphism tables (`map a[i] -> a[i+1];`), inline or as a file.
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    /// Largest generator index.
    #[arg(long, default_value_t = 3)]
    idx: u32,
    /// Largest word grade.
    #[arg(long, default_value_t = 2)]
    deg: usize,
}

impl BoundArgs {
    fn bounds(self) -> Bounds {
        Bounds::new(self.idx, self.deg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for ncann_core::Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => ncann_core::Side::Left,
            SideArg::Right => ncann_core::Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an element or polynomial.
    Nf {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Product of two elements or polynomials, optionally truncated.
    Mul {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        /// Multiply as power series modulo x^(order+1).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Annihilator of a set inside a bounded slice.
    Ann {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Elements separated by `;`, inline or as a file.
        #[arg(long)]
        elems: String,
        /// Polynomial slice with this x-degree.
        #[arg(long, conflicts_with = "order")]
        xdeg: Option<usize>,
        /// Series slice modulo x^(order+1).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Greedy search for a finite subset with zero slice annihilator.
    Zip {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        elems: String,
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
    /// Armendariz condition on a zero-product pair, or an exhaustive search.
    Armendariz {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, required_unless_present = "exhaustive")]
        f: Option<String>,
        #[arg(long, required_unless_present = "exhaustive")]
        g: Option<String>,
        /// Strong (power-series) version modulo x^(order+1).
        #[arg(long)]
        order: Option<usize>,
        /// Search every pair with bounded support instead.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 2)]
        support: usize,
        #[arg(long, default_value_t = 2)]
        xdeg: usize,
    },
    /// Full claim ledger of a built-in ring.
    Check {
        name: String,
        #[arg(short = 'p', long = "field", default_value_t = 2)]
        p: u64,
        #[arg(long)]
        deg: Option<usize>,
        #[arg(long)]
        idx: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Normal words of a slice, with an optional claimed-basis check.
    Basis {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        check: bool,
    },
}

/// A command's result: JSON, an optional plain rendering, and whether the
/// verification it ran succeeded.
struct Output {
    json: Value,
    text: Option<String>,
    ok: bool,
}

impl Output {
    fn json(json: Value, ok: bool) -> Self {
        Output {
            json,
            text: None,
            ok,
        }
    }
}

fn inline_or_file(arg: &str) -> std::io::Result<String> {
    let path = Path::new(arg);
    if !arg.contains(['[', ';', '\n']) && path.is_file() {
        fs::read_to_string(path)
    } else {
        Ok(arg.to_string())
    }
}

fn usage(msg: impl Into<String>) -> (i32, String) {
    (2, msg.into())
}

fn core_err(e: Error) -> (i32, String) {
    (e.exit_code(), e.to_string())
}

fn load_ring(args: &RingArgs) -> Result<(Presentation, Endomorphism), (i32, String)> {
    let pres = match args.ring.parse::<BuiltinName>() {
        Ok(_) => builtin_by_name(&args.ring, args.p).map_err(core_err)?,
        Err(_) => {
            let text = fs::read_to_string(&args.ring)
                .map_err(|e| usage(format!("cannot read ring {}: {e}", args.ring)))?;
            parse_presentation(&text).map_err(core_err)?
        }
    };
    let alpha = match &args.alpha {
        None => Endomorphism::identity(),
        Some(a) => {
            let text = inline_or_file(a).map_err(|e| usage(format!("cannot read {a}: {e}")))?;
            parse_endomorphism(&text, &pres).map_err(core_err)?
        }
    };
    Ok((pres, alpha))
}

fn poly_terms(p: &SkewPoly, pres: &Presentation) -> Vec<String> {
    let mut out = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        for t in pres.format_terms(c) {
            out.push(match i {
                0 => t,
                1 => format!("{t}*x"),
                _ => format!("{t}*x^{i}"),
            });
        }
    }
    out
}

fn render(p: &SkewPoly, pres: &Presentation) -> String {
    if p.is_constant() {
        pres.format_element(&p.coeff(0))
    } else {
        p.format(pres)
    }
}

fn parse_set(
    arg: &str,
    pres: &Presentation,
    alpha: &Endomorphism,
) -> Result<Vec<SkewPoly>, (i32, String)> {
    let text = inline_or_file(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))?;
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_poly(s, pres, Some(alpha)).map_err(core_err))
        .collect()
}

fn limit() -> Result<usize, (i32, String)> {
    match std::env::var("NCANN_MAX_SLICE") {
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("NCANN_MAX_SLICE must be an integer, got {v}"))),
        Err(_) => Ok(DEFAULT_SLICE_LIMIT),
    }
}

fn report_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn run(cmd: Command, seed: u64) -> Result<Output, (i32, String)> {
    match cmd {
        Command::Nf { ring, expr, json } => {
            let (pres, alpha) = load_ring(&ring)?;
            let p = parse_poly(&expr, &pres, Some(&alpha)).map_err(core_err)?;
            let shown = render(&p, &pres);
            Ok(Output {
                json: json!({ "input": expr, "normal_form": shown, "terms": poly_terms(&p, &pres) }),
                text: (!json).then_some(shown),
                ok: true,
            })
        }
        Command::Mul {
            ring,
            bounds,
            left,
            right,
            order,
            json,
        } => {
            let (pres, alpha) = load_ring(&ring)?;
            let b = bounds.bounds();
            let f = parse_poly(&left, &pres, Some(&alpha)).map_err(core_err)?;
            let g = parse_poly(&right, &pres, Some(&alpha)).map_err(core_err)?;
            let prod = match order {
                Some(t) => skew_mul_series(
                    &TruncSeries::from_poly(&f, t),
                    &TruncSeries::from_poly(&g, t),
                    &alpha,
                    &pres,
                    &b,
                )
                .map_err(core_err)?
                .to_poly(),
                None => skew_mul_poly(&f, &g, &alpha, &pres, &b).map_err(core_err)?,
            };
            let shown = render(&prod, &pres);
            Ok(Output {
                json: json!({ "product": shown, "terms": poly_terms(&prod, &pres), "order": order }),
                text: (!json).then_some(shown),
                ok: true,
            })
        }
        Command::Ann {
            ring,
            bounds,
            side,
            elems,
            xdeg,
            order,
        } => {
            let (pres, alpha) = load_ring(&ring)?;
            let targets = parse_set(&elems, &pres, &alpha)?;
            let b = bounds.bounds();
            let q = match (xdeg, order) {
                (Some(d), _) => AnnQuery::poly(side.into(), targets, b, d),
                (None, Some(t)) => AnnQuery::series(side.into(), targets, b, t),
                (None, None) => {
                    if targets.iter().any(|t| !t.is_constant()) {
                        return Err(usage("polynomial targets need --xdeg or --order"));
                    }
                    let elems: Vec<_> = targets.iter().map(|t| t.coeff(0)).collect();
                    AnnQuery::ring(side.into(), &elems, b)
                }
            };
            let q = q.with_alpha(alpha).with_limit(limit()?);
            let ann = annihilator(&q, &pres).map_err(core_err)?;
            let basis: Vec<Vec<String>> =
                ann.vectors().iter().map(|v| poly_terms(v, &pres)).collect();
            Ok(Output::json(
                json!({
                    "slice": ann.slice(),
                    "dim": ann.dim(),
                    "basis": basis,
                    "evidence_only": matches!(ann.slice().kind, SliceKind::Series { .. }),
                }),
                true,
            ))
        }
        Command::Zip {
            ring,
            bounds,
            side,
            elems,
            budget,
        } => {
            let (pres, alpha) = load_ring(&ring)?;
            let targets = parse_set(&elems, &pres, &alpha)?;
            if targets.iter().any(|t| !t.is_constant()) {
                return Err(usage("zip takes ring elements"));
            }
            let elems: Vec<_> = targets.iter().map(|t| t.coeff(0)).collect();
            let q = AnnQuery::ring(side.into(), &elems, bounds.bounds()).with_limit(limit()?);
            let found = zip_witness_search(&q, &pres, budget).map_err(core_err)?;
            let witness = found.as_ref().map(|idx| {
                idx.iter()
                    .map(|&i| pres.format_element(&elems[i]))
                    .collect::<Vec<_>>()
            });
            Ok(Output::json(
                json!({
                    "slice": q.slice,
                    "budget": budget,
                    "found": found.is_some(),
                    "witness": witness,
                    "evidence_only": true,
                }),
                found.is_some(),
            ))
        }
        Command::Armendariz {
            ring,
            bounds,
            f,
            g,
            order,
            exhaustive,
            support,
            xdeg,
        } => {
            let (pres, alpha) = load_ring(&ring)?;
            let b = bounds.bounds();
            if exhaustive {
                let space = ExhaustiveSpace {
                    bounds: b,
                    max_support: support,
                    x_degree: xdeg,
                };
                let o = exhaustive_zero_divisor_search(&pres, &space).map_err(core_err)?;
                let ok = o.armendariz_violations == 0;
                return Ok(Output::json(json!({ "space": space, "outcome": o }), ok));
            }
            let f = parse_poly(f.as_deref().unwrap_or_default(), &pres, Some(&alpha))
                .map_err(core_err)?;
            let g = parse_poly(g.as_deref().unwrap_or_default(), &pres, Some(&alpha))
                .map_err(core_err)?;
            let violation = match order {
                Some(t) => strong_armendariz_check(
                    &TruncSeries::from_poly(&f, t),
                    &TruncSeries::from_poly(&g, t),
                    &alpha,
                    &pres,
                    &b,
                ),
                None => armendariz_check(&f, &g, &alpha, &pres, &b),
            }
            .map_err(core_err)?;
            let mut report = CheckReport::new(
                if order.is_some() {
                    "strong_armendariz"
                } else {
                    "armendariz"
                },
                Verdict::Pass,
            )
            .with_bounds(b)
            .witness("f", render(&f, &pres))
            .witness("g", render(&g, &pres));
            if let Some(t) = order {
                report = report.param("order", t);
            }
            if let Some((i, j)) = violation {
                let mut red = pres.reducer();
                let twisted = alpha
                    .apply_power(&g.coeff(j), i as i64, &mut red)
                    .map_err(core_err)?;
                let c = red.mul(&f.coeff(i), &twisted).map_err(core_err)?;
                report = report
                    .witness("violation", format!("({i},{j})"))
                    .witness("product_coefficient", pres.format_element(&c))
                    .fail();
            }
            let ok = report.passed();
            Ok(Output::json(report_json(&report), ok))
        }
        Command::Check {
            name,
            p,
            deg,
            idx,
            order,
            samples,
        } => {
            let ring: BuiltinName = name.parse().map_err(core_err)?;
            let cfg = LedgerConfig {
                max_degree: deg,
                max_index: idx,
                order,
                seed,
                samples,
            };
            let reports = claim_ledger(ring, p, &cfg).map_err(core_err)?;
            let ok = reports.iter().all(|r| r.verdict.is_ok());
            Ok(Output::json(
                Value::Array(reports.iter().map(report_json).collect()),
                ok,
            ))
        }
        Command::Basis {
            ring,
            bounds,
            check,
        } => {
            let (pres, _) = load_ring(&ring)?;
            let b = bounds.bounds();
            let words: Vec<String> = pres
                .enumerate_basis(&b)
                .iter()
                .map(|w| pres.format_word(w))
                .collect();
            let mut out = json!({ "bounds": b, "count": words.len(), "words": words });
            let mut ok = true;
            if check {
                if pres.claimed_basis().is_none() {
                    return Err(core_err(Error::MissingClaimedBasis));
                }
                let r = check_basis_claim_with(&pres, &b, ncann_core::report::BASIS_SAMPLES, seed);
                ok = r.passed();
                out["claim"] = report_json(&r);
            }
            Ok(Output::json(out, ok))
        }
    }
}

/// Writes through a sibling temporary file so readers never see a partial report.
fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body)?;
    fs::rename(tmp, path)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command, cli.seed) {
        Ok(out) => {
            let body = match &out.text {
                Some(t) => format!("{t}\n"),
                None => to_json(&out.json),
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = write_atomic(path, &to_json(&out.json)) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
