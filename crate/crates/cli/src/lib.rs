//! Command-line front end. [`run`] does all the work so tests can drive it
//! in-process; the binary only forwards `std::env::args`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use divclass::curve::{self, CurveConfiguration, BUNDLED_CURVES};
use divclass::groups::UnitValue;
use divclass::linalg::Rational;
use divclass::singularities::{self, LocalPlaneCurve};
use divclass::stci::{self, CurveCandidate, ScreenRow, Status, SurfacePair, Verdict};
use divclass::surface::{self, Catalog, GlobalPicReport, SurfaceError, SurfaceGermPreset};

pub const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "divclass", version, about = "Exact divisor class group computations")]
struct Cli {
    /// Emit a versioned JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// List the rule behind each result with its reference.
    #[arg(long, global = true)]
    explain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants and Cartier group of a plane curve germ at the origin.
    Singularity {
        /// Polynomial in x and y, or a preset name.
        poly: String,
    },
    /// Cartier group from branch number and delta invariant.
    Cart {
        rho: u64,
        delta: u64,
        /// Extra W summands from nilpotents.
        #[arg(long = "nilpotent-w", default_value_t = 0)]
        nilpotent_w: usize,
    },
    /// Picard group of a projective curve configuration.
    CurvePic {
        /// JSON file or bundled configuration name.
        config: String,
    },
    /// Local almost-Picard group of a surface germ.
    ApicLocal {
        /// Catalog preset name or germ JSON file.
        germ: String,
    },
    /// Global Picard group of a catalog surface.
    Surface { name: String },
    /// Set-theoretic complete intersection tests.
    #[command(subcommand)]
    Stci(StciCommand),
}

#[derive(Subcommand, Debug)]
enum StciCommand {
    /// Screen all (d, g) up to a maximal degree.
    Screen {
        #[arg(long)]
        dmax: u64,
    },
    /// Degree/genus bounds for one curve on one pair of surfaces.
    Bounds {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Local class mu = -lambda^2 on the special ruled cubic.
    Mu(MuArgs),
    /// Conics through the ramification points of the Steiner surface.
    Steiner,
    /// Candidate classes on the ruled cubic.
    RuledCubic {
        #[arg(long, default_value_t = stci::RULED_CUBIC_TRANSVERSAL_BOUND)]
        bound: i64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct MuArgs {
    /// Rational lambda such as 2 or -3/5.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Pick lambda so that mu is a primitive N-th root of unity.
    #[arg(long = "root-of-unity")]
    root_of_unity: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    /// Rejected by the argument parser; the message is already formatted.
    Parse(String),
    Usage(String),
    UnknownName {
        what: &'static str,
        name: String,
        valid: Vec<String>,
    },
    Domain(divclass::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Usage(_) | Failure::UnknownName { .. } => 1,
            Failure::Domain(_) => 2,
        }
    }

    fn kind(&self) -> String {
        match self {
            Failure::Parse(_) | Failure::Usage(_) => "Usage".into(),
            Failure::UnknownName { .. } => "UnknownName".into(),
            Failure::Domain(e) => e.kind(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(m) | Failure::Usage(m) => m.clone(),
            Failure::UnknownName { what, name, valid } => {
                format!("unknown {what} '{name}'; valid names: {}", valid.join(", "))
            }
            Failure::Domain(e) => e.to_string(),
        }
    }
}

impl<E: Into<divclass::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        match e {
            divclass::Error::Surface(SurfaceError::UnknownPreset { name, valid }) => Failure::UnknownName {
                what: "preset",
                name,
                valid,
            },
            divclass::Error::Surface(SurfaceError::UnknownEntry { name, valid }) => Failure::UnknownName {
                what: "catalog entry",
                name,
                valid,
            },
            other => Failure::Domain(other),
        }
    }
}

/// What a command produced: text lines, a JSON payload and the rules used.
struct Report {
    command: &'static str,
    text: String,
    payload: Value,
    rules: Vec<String>,
}

/// Parses `args` (including the program name), writes the report to `out` and
/// diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let message = e.render().to_string();
            let message = message.trim_end().trim_start_matches("error: ");
            let failure = Failure::Parse(format!("{message}\n\nvalid commands: {}", command_list().join(", ")));
            return emit_failure(&failure, wants_json, out, err);
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let written = if cli.json {
                write_json(out, &report, cli.explain)
            } else {
                write_text(out, &report, cli.explain)
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(f) => emit_failure(&f, cli.json, out, err),
    }
}

/// Leaf command paths such as `stci screen`, in declaration order.
fn command_list() -> Vec<String> {
    fn walk(cmd: &clap::Command, prefix: &str, acc: &mut Vec<String>) {
        for sub in cmd.get_subcommands().filter(|c| c.get_name() != "help") {
            let path = if prefix.is_empty() {
                sub.get_name().to_string()
            } else {
                format!("{prefix} {}", sub.get_name())
            };
            if sub.has_subcommands() {
                walk(sub, &path, acc);
            } else {
                acc.push(path);
            }
        }
    }
    let mut acc = Vec::new();
    walk(&<Cli as clap::CommandFactory>::command(), "", &mut acc);
    acc
}

fn emit_failure(f: &Failure, as_json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if as_json {
        let doc = json!({
            "schema": SCHEMA,
            "error": { "kind": f.kind(), "message": f.message() },
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"));
    } else {
        let _ = writeln!(err, "error: {}", f.message());
    }
    f.exit_code()
}

fn provenance(rules: &[String]) -> Vec<(String, String)> {
    let catalog = Catalog::bundled();
    rules
        .iter()
        .map(|r| {
            let cite = catalog.citation(r).unwrap_or("(no reference recorded)");
            (r.clone(), cite.to_string())
        })
        .collect()
}

fn write_text(out: &mut dyn Write, report: &Report, explain: bool) -> std::io::Result<()> {
    out.write_all(report.text.as_bytes())?;
    if explain {
        writeln!(out)?;
        writeln!(out, "provenance:")?;
        let rows = provenance(&report.rules);
        let width = rows.iter().map(|(r, _)| r.len()).max().unwrap_or(0);
        for (rule, cite) in rows {
            writeln!(out, "  {rule:<width$}  {cite}")?;
        }
    }
    Ok(())
}

fn write_json(out: &mut dyn Write, report: &Report, explain: bool) -> std::io::Result<()> {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(report.command));
    doc.insert("result".into(), report.payload.clone());
    if explain {
        let prov: Vec<Value> = provenance(&report.rules)
            .into_iter()
            .map(|(rule, citation)| json!({ "rule": rule, "citation": citation }))
            .collect();
        doc.insert("provenance".into(), Value::Array(prov));
    }
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&Value::Object(doc)).expect("json value")
    )
}

/// Two-column `key  value` block with keys padded to a common width.
fn kv_table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<width$}  {v}");
    }
    s
}

fn rules(ids: &[&str]) -> Vec<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Singularity { poly } => singularity(poly),
        Command::Cart {
            rho,
            delta,
            nilpotent_w,
        } => cart(*rho, *delta, *nilpotent_w),
        Command::CurvePic { config } => curve_pic(config),
        Command::ApicLocal { germ } => apic_local(germ),
        Command::Surface { name } => surface_pic(name),
        Command::Stci(sub) => match sub {
            StciCommand::Screen { dmax } => stci_screen(*dmax),
            StciCommand::Bounds { d, g, m, n } => {
                stci_bounds(CurveCandidate { d: *d, g: *g }, SurfacePair { m: *m, n: *n })
            }
            StciCommand::Mu(args) => stci_mu(args),
            StciCommand::Steiner => Ok(stci_steiner()),
            StciCommand::RuledCubic { bound } => Ok(stci_ruled_cubic(*bound)),
        },
    }
}

fn multiplicity_sequence(seq: &[(u32, u32)]) -> String {
    if seq.is_empty() {
        return "-".into();
    }
    seq.iter()
        .map(|&(m, e)| if e == 1 { m.to_string() } else { format!("{m}[x{e}]") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn singularity(input: &str) -> Result<Report, Failure> {
    if let Some(p) = singularities::singularity_preset(input) {
        let cart = p.cart_group();
        let mut ids = vec!["cart-group"];
        if p.nilpotent_w_rank > 0 {
            ids.push("cart-nonreduced");
        }
        return Ok(Report {
            command: "singularity",
            text: kv_table(&[
                ("preset", p.name.to_string()),
                ("description", p.description.to_string()),
                ("rho", p.rho.to_string()),
                ("delta", p.delta.to_string()),
                ("Cart", cart.render()),
            ]),
            payload: json!({
                "preset": p.name,
                "description": p.description,
                "rho": p.rho,
                "delta": p.delta,
                "cart": cart,
                "cart_rendered": cart.render(),
            }),
            rules: rules(&ids),
        });
    }
    let f = LocalPlaneCurve::parse(input)?;
    let report = singularities::analyze(&f)?;
    let newton = match &report.newton {
        Some(n) => format!("mu={} rho={} delta={}", n.mu, n.rho, n.delta),
        None => "not applicable".into(),
    };
    let text = kv_table(&[
        ("polynomial", report.polynomial.clone()),
        ("multiplicity", report.multiplicity.to_string()),
        ("rho", report.rho.to_string()),
        ("delta", report.delta.to_string()),
        ("multiplicities", multiplicity_sequence(&report.multiplicity_sequence)),
        ("Cart", report.cart.render()),
        ("newton check", newton),
    ]);
    let mut payload = to_json(&report);
    payload["cart_rendered"] = json!(report.cart.render());
    Ok(Report {
        command: "singularity",
        text,
        payload,
        rules: rules(&["delta-blowup", "cart-group"]),
    })
}

fn cart(rho: u64, delta: u64, nilpotent_w: usize) -> Result<Report, Failure> {
    let reduced = singularities::cart_group_from_counts(rho, delta)?;
    let group = singularities::cart_group_nonreduced(&reduced, nilpotent_w);
    let mut ids = vec!["cart-group"];
    if nilpotent_w > 0 {
        ids.push("cart-nonreduced");
    }
    Ok(Report {
        command: "cart",
        text: kv_table(&[
            ("rho", rho.to_string()),
            ("delta", delta.to_string()),
            ("nilpotent W", nilpotent_w.to_string()),
            ("Cart", group.render()),
        ]),
        payload: json!({
            "rho": rho,
            "delta": delta,
            "nilpotent_w": nilpotent_w,
            "cart": group,
            "cart_rendered": group.render(),
        }),
        rules: rules(&ids),
    })
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read '{path}': {e}")))
}

fn looks_like_file(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

fn curve_pic(arg: &str) -> Result<Report, Failure> {
    let cfg = if looks_like_file(arg) {
        CurveConfiguration::from_json(&read_file(arg)?)?
    } else {
        curve::bundled_curve(arg).ok_or_else(|| Failure::UnknownName {
            what: "curve configuration",
            name: arg.to_string(),
            valid: BUNDLED_CURVES.iter().map(|c| c.name.to_string()).collect(),
        })?
    };
    let pic = curve::pic_of_curve(&cfg)?;
    let reduced = cfg.reduction();
    let p_a = curve::arithmetic_genus(&reduced)?;
    let name = cfg.name.clone().unwrap_or_else(|| arg.to_string());
    let mut rows = vec![
        ("curve", name.clone()),
        ("components", cfg.components.len().to_string()),
        ("singular points", cfg.points.len().to_string()),
        ("Pic", pic.render()),
    ];
    let mut ids = vec!["curve-pic", "arithmetic-genus"];
    if cfg.nonreduced.is_some() {
        rows.push(("p_a of reduction", p_a.to_string()));
        ids.push("curve-pic-nonreduced");
    } else {
        rows.push(("p_a", p_a.to_string()));
        let dim = pic.unit_rank + pic.additive_rank + pic.abelian_dim;
        rows.push(("units+additive+abelian", dim.to_string()));
    }
    Ok(Report {
        command: "curve-pic",
        text: kv_table(&rows),
        payload: json!({
            "curve": name,
            "configuration": cfg,
            "pic": pic,
            "pic_rendered": pic.render(),
            "arithmetic_genus_of_reduction": p_a,
        }),
        rules: rules(&ids),
    })
}

fn apic_local(arg: &str) -> Result<Report, Failure> {
    let catalog = Catalog::bundled();
    let owned;
    let germ: &SurfaceGermPreset = if looks_like_file(arg) {
        owned = SurfaceGermPreset::from_json(&read_file(arg)?)?;
        &owned
    } else {
        catalog.preset(arg)?
    };
    let apic = surface::local_apic(germ)?;
    let mut rows = vec![
        ("germ", germ.name.clone()),
        ("Cart L", germ.cart_l.render()),
        ("Cart Gamma", germ.cart_gamma.render()),
        ("APic", apic.render()),
        ("points upstairs", germ.points_upstairs.to_string()),
    ];
    if let Some(expected) = &germ.expected_apic {
        let verdict = if expected.is_isomorphic(&apic) {
            "matches"
        } else {
            "DIFFERS"
        };
        rows.push(("expected", format!("{} ({verdict})", expected.render())));
    }
    Ok(Report {
        command: "apic-local",
        text: kv_table(&rows),
        payload: json!({
            "germ": germ.name,
            "description": germ.description,
            "cart_l": germ.cart_l,
            "cart_gamma": germ.cart_gamma,
            "apic": apic,
            "apic_rendered": apic.render(),
            "points_upstairs": germ.points_upstairs,
            "expected_apic": germ.expected_apic,
        }),
        rules: rules(&["local-apic"]),
    })
}

fn vector(v: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn surface_pic(name: &str) -> Result<Report, Failure> {
    let catalog = Catalog::bundled();
    let entry = catalog.entry(name)?;
    let report: GlobalPicReport = catalog.pic_of_surface(entry)?;
    let kernel: Vec<String> = report.kernel_basis.iter().map(|v| vector(v)).collect();
    let mut text = kv_table(&[
        ("surface", report.surface.clone()),
        ("Pic X", report.pic_x.render()),
        (
            "kernel basis",
            if kernel.is_empty() {
                "-".into()
            } else {
                kernel.join(" ")
            },
        ),
        ("hyperplane class", vector(&report.hyperplane_class)),
        ("H in kernel basis", vector(&report.hyperplane_coordinates)),
        ("hyperplane index", report.hyperplane_index.to_string()),
        ("ordinary", report.ordinary.to_string()),
        ("injectivity", report.injectivity_justification.clone()),
    ]);
    text.push_str("\nlocal APic:\n");
    let point_w = report
        .local_apic_table
        .iter()
        .map(|r| r.point.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let preset_w = report
        .local_apic_table
        .iter()
        .map(|r| r.preset.len())
        .max()
        .unwrap_or(0)
        .max(6);
    let _ = writeln!(
        text,
        "  {:<point_w$}  {:<preset_w$}  {:>5}  APic",
        "point", "preset", "count"
    );
    for row in &report.local_apic_table {
        let _ = writeln!(
            text,
            "  {:<point_w$}  {:<preset_w$}  {:>5}  {}",
            row.point,
            row.preset,
            row.count,
            row.apic.render()
        );
    }
    let mut ids = vec!["pic-kernel", "pic-injective", "local-apic"];
    if report.ordinary {
        ids.push("ordinary-table");
    }
    let mut payload = to_json(&report);
    payload["pic_x_rendered"] = json!(report.pic_x.render());
    Ok(Report {
        command: "surface",
        text,
        payload,
        rules: rules(&ids),
    })
}

fn pairs_text(pairs: &[SurfacePair]) -> String {
    if pairs.is_empty() {
        return "-".into();
    }
    pairs
        .iter()
        .map(|p| format!("({},{})", p.m, p.n))
        .collect::<Vec<_>>()
        .join(" ")
}

fn reasons_text(v: &Verdict) -> String {
    if v.reasons.is_empty() {
        return "-".into();
    }
    v.reasons
        .iter()
        .map(|r| format!("{}({},{})", r.code, r.m, r.n))
        .collect::<Vec<_>>()
        .join(" ")
}

fn screen_table(rows: &[ScreenRow]) -> String {
    let surv: Vec<String> = rows.iter().map(|r| pairs_text(&r.verdict.surviving_pairs)).collect();
    let sw = surv.iter().map(|s| s.len()).max().unwrap_or(0).max(9);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>4}  {:>4}  {:<10}  {:<sw$}  reasons",
        "d", "g", "status", "surviving"
    );
    for (row, surv) in rows.iter().zip(&surv) {
        let _ = writeln!(
            s,
            "{:>4}  {:>4}  {:<10}  {:<sw$}  {}",
            row.d,
            row.g,
            row.verdict.status.to_string(),
            surv,
            reasons_text(&row.verdict)
        );
    }
    s
}

fn stci_screen(dmax: u64) -> Result<Report, Failure> {
    let rows = stci::screen(dmax)?;
    let mut text = screen_table(&rows);
    let unresolved: Vec<String> = rows
        .iter()
        .filter(|r| r.verdict.status == Status::Unresolved)
        .map(|r| format!("({},{})", r.d, r.g))
        .collect();
    let feasible = rows.iter().filter(|r| r.verdict.status == Status::Feasible).count();
    let _ = writeln!(text);
    let _ = writeln!(
        text,
        "feasible {feasible}, excluded {}, unresolved {}",
        rows.len() - feasible - unresolved.len(),
        if unresolved.is_empty() {
            "-".to_string()
        } else {
            unresolved.join(" ")
        }
    );
    let mut ids: Vec<String> = vec!["screen".into()];
    for row in &rows {
        for r in &row.verdict.reasons {
            if !ids.iter().any(|x| x == r.code) {
                ids.push(r.code.to_string());
            }
        }
    }
    if !unresolved.is_empty() {
        ids.push("unresolved".into());
    }
    Ok(Report {
        command: "stci screen",
        text,
        payload: json!({ "dmax": dmax, "rows": rows }),
        rules: ids,
    })
}

fn stci_bounds(c: CurveCandidate, p: SurfacePair) -> Result<Report, Failure> {
    let verdict = stci::self_linked_bound_check(c, p)?;
    let first_lhs = c.d as i128 * (p.m as i128 + p.n as i128 - 7);
    let first_rhs = 4 * c.g as i128 - 4;
    let second = 4 * c.g as i128 - 4 + 7 * c.d as i128;
    let cube = 8 * (c.d as i128).pow(3);
    let mark = |ok: bool| if ok { "pass" } else { "fail" };
    let text = kv_table(&[
        ("curve", format!("d={} g={}", c.d, c.g)),
        ("surfaces", format!("m={} n={}", p.m, p.n)),
        (
            "first bound",
            format!(
                "d(m+n-7) = {first_lhs} <= 4g-4 = {first_rhs}  {}",
                mark(stci::first_bound_holds(c, p))
            ),
        ),
        (
            "second bound",
            format!(
                "(4g-4+7d)^2 with 4g-4+7d = {second} vs 8d^3 = {cube}  {}",
                mark(stci::second_bound_holds(c))
            ),
        ),
        ("status", verdict.status.to_string()),
        ("reasons", reasons_text(&verdict)),
    ]);
    Ok(Report {
        command: "stci bounds",
        text,
        payload: json!({ "d": c.d, "g": c.g, "m": p.m, "n": p.n, "verdict": verdict }),
        rules: rules(&[stci::FIRST_BOUND, stci::SECOND_BOUND]),
    })
}

fn stci_mu(args: &MuArgs) -> Result<Report, Failure> {
    let lambda = match (&args.lambda, args.root_of_unity) {
        (Some(text), _) => {
            let q: Rational = text
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("'{text}' is not a rational number")))?;
            UnitValue::rational(q).map_err(|_| stci::StciError::InvalidLambda(text.clone()))?
        }
        (None, Some(n)) => stci::lambda_for_mu_order(n)?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let probe = stci::ruled_cubic_mu(&lambda)?;
    Ok(Report {
        command: "stci mu",
        text: kv_table(&[
            ("lambda", probe.lambda.to_string()),
            ("mu", probe.mu.to_string()),
            ("order", probe.order.to_string()),
            ("admissible", probe.admissible.to_string()),
        ]),
        payload: to_json(&probe),
        rules: rules(&["ruled-cubic-mu", "local-stci"]),
    })
}

fn line_text(l: &[i64; 3]) -> String {
    let mut s = String::new();
    for (c, var) in l.iter().zip(["t", "u", "v"]) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let sep = if s.is_empty() { "" } else { " " };
        let mag = c.unsigned_abs();
        let coeff = if mag == 1 { String::new() } else { mag.to_string() };
        let space = if s.is_empty() || sign.is_empty() { "" } else { " " };
        let _ = write!(s, "{sep}{sign}{space}{coeff}{var}");
    }
    format!("{s} = 0")
}

fn stci_steiner() -> Report {
    let search = stci::steiner_conic_search();
    let mut rows = vec![("lines".to_string(), search.lines.len().to_string())];
    for (l, k) in search.lines.iter().zip(&search.points_per_line) {
        rows.push(("  line".into(), format!("{}  ({k} points)", line_text(l))));
    }
    rows.push((
        "conics through all six".into(),
        format!("dimension {}", search.conic_space_dimension),
    ));
    rows.push(("smooth conic exists".into(), search.smooth_conic_exists.to_string()));
    let borrowed: Vec<(&str, String)> = rows.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Report {
        command: "stci steiner",
        text: kv_table(&borrowed),
        payload: to_json(&search),
        rules: rules(&["steiner-conics"]),
    }
}

fn stci_ruled_cubic(bound: i64) -> Report {
    let classes = stci::ruled_cubic_class_search_with_bound(bound);
    let listed: Vec<String> = classes.iter().map(|(a, b)| format!("({a},{b})")).collect();
    Report {
        command: "stci ruled-cubic",
        text: kv_table(&[
            ("bound on a", bound.to_string()),
            (
                "classes",
                if listed.is_empty() {
                    "-".into()
                } else {
                    listed.join(" ")
                },
            ),
        ]),
        payload: json!({ "bound": bound, "classes": classes }),
        rules: rules(&["ruled-cubic-classes"]),
    }
}
