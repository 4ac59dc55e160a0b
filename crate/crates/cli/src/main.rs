//! `dlp`: command-line front end for Deligne–Lusztig characters and
//! spherical periods of small GL_n and U_n.
//!
//! Exit status: 0 on success, 1 when a size cap refuses the computation,
//! 2 on an internal assertion failure (including a failed `verify`),
//! 3 on invalid input.

mod cache;
mod output;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dlp_core::dlchar::{dl_table, table_rows, DLSpec};
use dlp_core::ffield::Field;
use dlp_core::formulas::Catalog;
use dlp_core::green::{partitions, GreenTable, Partition};
use dlp_core::groups::{signed_order, Factor, Family, Group, GroupSpec};
use dlp_core::periods::{period_frobrec, period_scan, PairKind, PeriodData, PeriodReport, SphericalPair};
use dlp_core::tori::{torus_classes, TorusClass};
use dlp_core::verify::{run_criterion, Suite, VerifyOptions, CRITERIA};

use cache::{Cache, Status};
use output::{big, emit, int, Format, Record};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dlp_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("verification failed: criteria {0:?}")]
    VerifyFailed(Vec<u32>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(dlp_core::Error::SizeCap { .. } | dlp_core::Error::ConductorOverflow(_)) => 1,
            CliError::Core(dlp_core::Error::Assertion(_)) | CliError::VerifyFailed(_) => 2,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 2,
            _ => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dlp", version, about = "Deligne-Lusztig characters and spherical periods over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Cache directory (default: $DLP_CACHE_DIR; no caching if unset).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Defining polynomial and generator of GF(p^k).
    FieldInfo {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Order of GL_n(F_q) or U_n(F_q).
    GroupOrder {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        /// Also count the elements by enumeration.
        #[arg(long)]
        enumerate: bool,
    },
    /// Maximal torus classes of a group, or the tori of a spherical pair.
    TorusList {
        #[arg(long, required_unless_present = "pair")]
        family: Option<Family>,
        #[arg(long, required_unless_present = "pair")]
        n: Option<u32>,
        #[arg(long)]
        pair: Option<PairKind>,
        #[arg(long)]
        q: u64,
    },
    /// Green polynomials Q_ρ(λ), optionally evaluated at q.
    Green {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Values of R_{T,χ} on every conjugacy class.
    DlTable {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        /// Torus class, e.g. `2,1` or `split`.
        #[arg(long)]
        torus: String,
        /// Character exponents against the cyclic factors, or `trivial`.
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long, default_value_t = 1)]
        nu: u32,
    },
    /// Period ⟨R_{T,χ}, 1⟩_H of a catalog pair.
    Period {
        #[arg(long)]
        pair: PairKind,
        #[arg(long)]
        q: u64,
        /// One partition per factor of G separated by `;`, or `split`.
        #[arg(long)]
        torus: String,
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        /// Also compute the period by Frobenius reciprocity.
        #[arg(long)]
        both_routes: bool,
    },
    /// Periods along several ν with a constancy report.
    PeriodScan {
        #[arg(long)]
        pair: PairKind,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        torus: String,
        #[arg(long, default_value = "trivial")]
        chi: String,
        /// Comma-separated ν values.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        nus: Vec<u32>,
        /// Progression gap d (default: family gap times splitting degree).
        #[arg(long)]
        gap: Option<u32>,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "fast")]
        suite: Suite,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
}

fn parse_tori(s: &str, factors: &[Factor]) -> Result<Vec<Partition>, CliError> {
    let s = s.trim();
    let out: Vec<Partition> = match s {
        "split" => factors.iter().map(|f| Partition::new(vec![1; f.n])).collect(),
        "elliptic" | "coxeter" => factors.iter().map(|f| Partition::new(vec![f.n as u32])).collect(),
        _ => s.split([';', 'x']).map(|t| t.parse()).collect::<Result<_, _>>()?,
    };
    if out.len() != factors.len() || out.iter().zip(factors).any(|(p, f)| p.size() as usize != f.n) {
        return Err(CliError::Usage(format!(
            "torus {s:?} does not match G = {}",
            factors.iter().map(|f| format!("{}{}", f.family, f.n)).collect::<Vec<_>>().join(" x ")
        )));
    }
    Ok(out)
}

fn parse_chi(s: &str, orders: &[u64]) -> Result<Vec<u64>, CliError> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t == "trivial" {
        return Ok(vec![0; orders.len()]);
    }
    let exps = t
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad character exponent {x:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if exps.len() != orders.len() {
        return Err(CliError::Usage(format!(
            "character needs {} exponents against cyclic factors of orders {orders:?}",
            orders.len()
        )));
    }
    Ok(exps)
}

fn tori_label(t: &[Partition]) -> String {
    t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("x")
}

fn pair_tori(pair: &SphericalPair) -> Result<Vec<Vec<Partition>>, CliError> {
    let mut out: Vec<Vec<Partition>> = vec![vec![]];
    for f in pair.g_spec()?.factors {
        out = out
            .into_iter()
            .flat_map(|t| {
                partitions(f.n as u32).into_iter().map(move |c| {
                    let mut v = t.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

fn green_key(family: Family, n: u32) -> String {
    format!("green|v1|family={family}|n={n}")
}

fn green_table(cache: &Cache, family: Family, n: u32) -> Result<(GreenTable, Status), CliError> {
    let (text, status) = cache.get_or_compute(&green_key(family, n), || Ok(GreenTable::generate(family, n)?.to_text()))?;
    Ok((GreenTable::from_text(&text)?, status))
}

fn period_report(
    cache: &Cache,
    pair: &SphericalPair,
    tori: &[Partition],
    exps: &[u64],
    nu: u32,
) -> Result<(PeriodReport, Status), CliError> {
    let key = format!("period|v1|pair={}|q={}|torus={}|chi={exps:?}|nu={nu}", pair.id(), pair.q, tori_label(tori));
    let (text, status) = cache.get_or_compute(&key, || {
        Ok(serde_json::to_string(&dlp_core::periods::period_bruteforce(pair, tori, exps, nu)?)?)
    })?;
    Ok((serde_json::from_str(&text)?, status))
}

fn period_record(r: &PeriodReport, status: Status, extra: Value) -> Record {
    let mut prov = json!({
        "route": "bruteforce",
        "formula": r.formula.map(int),
        "matches": r.matches,
        "cache": status.as_str(),
    });
    if let (Value::Object(p), Value::Object(e)) = (&mut prov, extra) {
        p.extend(e);
    }
    Record::new(
        "period",
        json!({"pair": r.pair, "q": r.q, "torus": r.torus.join("x"), "chi": r.chi, "nu": r.nu}),
        int(r.value),
        prov,
    )
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::open(cli.cache_dir.clone(), cli.no_cache);
    let mut records = Vec::new();
    match cli.cmd {
        Cmd::FieldInfo { p, k } => {
            let f = Field::get(p, k)?;
            records.push(Record::new(
                "field",
                json!({"p": p, "k": k}),
                json!({
                    "size": f.size(),
                    "modulus": f.spec().modulus,
                    "canonical": f.spec().canonical(),
                    "generator": f.generator(),
                }),
                Value::Null,
            ));
        }
        Cmd::GroupOrder { family, n, q, enumerate } => {
            let spec = GroupSpec::new(vec![Factor { family, n: n as usize }], q)?;
            let closed = signed_order(n as usize, family.signed(q));
            let mut prov = json!({"source": "closed form"});
            if enumerate {
                let count = Group::standalone(spec)?.elements()?.len() as u128;
                if count != closed {
                    return Err(dlp_core::Error::Assertion(format!("enumerated {count}, formula {closed}")).into());
                }
                prov = json!({"source": "closed form", "enumerated": big(count)});
            }
            records.push(Record::new("group-order", json!({"family": family.to_string(), "n": n, "q": q}), big(closed), prov));
        }
        Cmd::TorusList { family, n, pair, q } => match pair {
            Some(kind) => {
                let pair = SphericalPair::new(kind, q)?;
                for t in pair_tori(&pair)? {
                    let data = PeriodData::get(&pair, &t, 1)?;
                    let orders = data.torus.orders();
                    let catalog = Catalog::builtin().find(&pair.id(), &t).map(|e| e.status.clone());
                    records.push(Record::new(
                        "pair-torus",
                        json!({"pair": pair.id(), "q": q, "torus": tori_label(&t)}),
                        json!({"orders": orders, "characters": orders.iter().product::<u64>()}),
                        json!({"catalog": catalog, "h": kind.describe()}),
                    ));
                }
            }
            None => {
                let (family, n) = (family.expect("clap"), n.expect("clap"));
                GroupSpec::new(vec![Factor { family, n: n as usize }], q)?;
                for c in torus_classes(family, n) {
                    let orders = c.orders(q);
                    records.push(Record::new(
                        "torus",
                        json!({"family": family.to_string(), "n": n, "q": q, "torus": c.parts.to_string()}),
                        json!({
                            "orders": orders,
                            "order": big(orders.iter().map(|&m| m as u128).product()),
                            "sigma": c.sigma(),
                            "splitting_degree": c.splitting_degree(),
                        }),
                        Value::Null,
                    ));
                }
            }
        },
        Cmd::Green { family, n, q } => {
            let (table, status) = green_table(&cache, family, n)?;
            for ((rho, lambda), poly) in &table.entries {
                let value = match q {
                    Some(q) => int(poly.eval(family.signed(q) as i128)),
                    None => json!(poly.0),
                };
                let mut inputs = json!({"family": family.to_string(), "n": n, "torus": rho.to_string(), "unipotent": lambda.to_string()});
                if let Some(q) = q {
                    inputs["q"] = json!(q);
                }
                records.push(Record::new("green", inputs, value, json!({"cache": status.as_str()})));
            }
        }
        Cmd::DlTable { family, n, q, torus, chi, nu } => {
            let factors = vec![Factor { family, n: n as usize }];
            let spec = GroupSpec::new(factors.clone(), q)?;
            let tori = parse_tori(&torus, &factors)?;
            let orders: Vec<u64> = tori.iter().flat_map(|t| TorusClass::new(family, t.clone()).orders(q)).collect();
            let exps = parse_chi(&chi, &orders)?;
            let dl = DLSpec::new(&spec, &tori, exps.clone(), nu)?;
            let (classes, vals) = dl_table(&dl)?;
            for row in table_rows(&classes, &vals) {
                records.push(Record::new(
                    "dl-value",
                    json!({
                        "family": family.to_string(), "n": n, "q": q, "nu": nu,
                        "torus": tori_label(&tori), "chi": exps, "class": row.class_id,
                        "rep": row.rep, "size": row.size,
                    }),
                    json!(row.value),
                    json!({"conductor": row.conductor}),
                ));
            }
        }
        Cmd::Period { pair, q, torus, chi, nu, both_routes } => {
            let pair = SphericalPair::new(pair, q)?;
            let tori = parse_tori(&torus, &pair.g_spec()?.factors)?;
            let orders = PeriodData::get(&pair, &tori, 1)?.torus.orders();
            let exps = parse_chi(&chi, &orders)?;
            let (r, status) = period_report(&cache, &pair, &tori, &exps, nu)?;
            let mut extra = json!({});
            if both_routes {
                let v = period_frobrec(&pair, &tori, &exps, nu)?;
                if v != r.value {
                    return Err(dlp_core::Error::Assertion(format!("routes disagree: {} vs {v}", r.value)).into());
                }
                extra = json!({"frobrec": int(v)});
            }
            if r.matches == Some(false) {
                records.push(period_record(&r, status, extra));
                emit(&records, cli.format, out)?;
                return Err(dlp_core::Error::Assertion("period does not match its closed form".into()).into());
            }
            records.push(period_record(&r, status, extra));
        }
        Cmd::PeriodScan { pair, q, torus, chi, nus, gap } => {
            let pair = SphericalPair::new(pair, q)?;
            let tori = parse_tori(&torus, &pair.g_spec()?.factors)?;
            let orders = PeriodData::get(&pair, &tori, 1)?.torus.orders();
            let exps = parse_chi(&chi, &orders)?;
            let mut statuses = BTreeMap::new();
            for &nu in &nus {
                let (_, s) = period_report(&cache, &pair, &tori, &exps, nu)?;
                statuses.insert(nu, s);
            }
            let scan = period_scan(&pair, &tori, &exps, &nus, gap)?;
            for r in &scan.reports {
                records.push(period_record(r, statuses[&r.nu], json!({"on_progression": scan.progression.contains(&r.nu)})));
            }
            records.push(Record::new(
                "scan",
                json!({"pair": pair.id(), "q": q, "torus": tori_label(&tori), "chi": exps, "nus": nus}),
                json!(scan.constant),
                json!({"gap": scan.gap, "progression": scan.progression}),
            ));
        }
        Cmd::Verify { suite, criteria } => {
            let mut opts = VerifyOptions::new(suite);
            for (family, n) in [(Family::GL, 2), (Family::GL, 3), (Family::U, 2)] {
                if cache.dir().is_some() {
                    let (t, _) = green_table(&cache, family, n)?;
                    opts.green_tables.insert((family, n), t);
                }
            }
            let ids: Vec<u32> = if criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { criteria };
            let mut failed = Vec::new();
            for id in ids {
                let r = run_criterion(id, &opts);
                if cli.format == Format::Text {
                    writeln!(out, "{r}")?;
                } else {
                    records.push(Record::new(
                        "criterion",
                        json!({"id": r.id, "suite": format!("{suite:?}").to_lowercase()}),
                        json!(if r.passed { "PASS" } else { "FAIL" }),
                        json!({"name": r.name, "detail": r.detail}),
                    ));
                }
                if !r.passed {
                    failed.push(id);
                }
            }
            emit(&records, cli.format, out)?;
            return if failed.is_empty() { Ok(()) } else { Err(CliError::VerifyFailed(failed)) };
        }
    }
    emit(&records, cli.format, out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
