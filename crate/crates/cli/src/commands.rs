use serde::Serialize;

use qbruhat::affine_oracle::{Mismatch, Oracle, PathReport, Verdict};
use qbruhat::cartan::parse_multiplicities;
use qbruhat::degree::DegreeCalculator;
use qbruhat::qls::{self, PathRecord, QlsPath, Variant};
use qbruhat::{Context, CosetSystem, Error, FiniteType, LevelZeroShape, Pqbg, Rational, RootSystem, WeylGroup};

use crate::output::{self, GraphView, Header};
use crate::{Common, Failure, Format, VariantArg};

pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn parse_parabolic(s: &str, rank: usize) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match t.parse::<usize>() {
            Ok(j) if (1..=rank).contains(&j) => out.push(j - 1),
            _ => return Err(Failure::Input(format!("bad parabolic index {t:?}"))),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn one_based(j: &[usize]) -> Vec<usize> {
    j.iter().map(|j| j + 1).collect()
}

fn format(c: &Common, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = c.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Input(format!("format {f:?} not supported here")))
    }
}

fn header(schema: &'static str, c: &Common, multiplicities: &[u32], j: &[usize]) -> Header {
    Header {
        schema,
        cartan_type: c.cartan_type.trim().to_string(),
        lambda: multiplicities.to_vec(),
        parabolic: one_based(j),
    }
}

/// Context for commands that need `W₀ᴶ ≅ W₀Λ`; an explicit J must equal
/// the stabilizer of Λ.
fn load(c: &Common) -> Result<Context, Failure> {
    let ctx = Context::parse(&c.cartan_type, &c.lambda)?;
    if let Some(s) = &c.parabolic {
        let j = parse_parabolic(s, ctx.root_system().rank())?;
        if j != ctx.shape().parabolic() {
            return Err(Failure::Input(format!(
                "--parabolic {:?} differs from the stabilizer {:?} of λ; only qbg accepts a smaller J",
                one_based(&j),
                one_based(ctx.shape().parabolic())
            )));
        }
    }
    Ok(ctx)
}

pub fn qbg(c: &Common) -> Result<Outcome, Failure> {
    let f = format(c, Format::Dot, &[Format::Dot, Format::Json, Format::Csv])?;
    let ft: FiniteType = c.cartan_type.parse()?;
    let rs = RootSystem::new(ft);
    let m = parse_multiplicities(&c.lambda)?;
    let shape = LevelZeroShape::new(&rs, &m)?;
    let j = match &c.parabolic {
        None => shape.parabolic().to_vec(),
        Some(s) => {
            let j = parse_parabolic(s, rs.rank())?;
            if !j.iter().all(|x| shape.parabolic().contains(x)) {
                return Err(Error::BadParabolic(one_based(&j)).into());
            }
            j
        }
    };
    let group = WeylGroup::new(&rs)?;
    let cosets = CosetSystem::new(&group, &j);
    let graph = Pqbg::new(&rs, &group, &cosets);
    let view = GraphView { rs: &rs, group: &group, cosets: &cosets, graph: &graph, lambda: shape.classical() };
    let text = match f {
        Format::Dot => graph.to_dot(&rs, &group, &cosets, shape.classical()),
        Format::Json => view.to_json(header(output::QBG_SCHEMA, c, &m, &j))?,
        Format::Csv => output::csv(view.edge_rows())?,
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct PathList {
    #[serde(flatten)]
    header: Header,
    variant: &'static str,
    count: usize,
    paths: Vec<PathRecord>,
}

#[derive(Serialize)]
struct PathRow {
    index: usize,
    path: String,
    length: usize,
}

pub fn qls(c: &Common, variant: VariantArg) -> Result<Outcome, Failure> {
    let f = format(c, Format::Json, &[Format::Json, Format::Csv])?;
    let ctx = load(c)?;
    let (v, name) = match variant {
        VariantArg::Hat => (Variant::Hat, "hat"),
        VariantArg::Tilde => (Variant::Tilde, "tilde"),
        VariantArg::Unconstrained => (Variant::Unconstrained, "unconstrained"),
    };
    let paths = qls::enumerate(&ctx, v, c.cap)?;
    let text = match f {
        Format::Csv => output::csv(paths.iter().enumerate().map(|(i, p)| PathRow {
            index: i,
            path: p.to_literal(&ctx),
            length: p.len(),
        }))?,
        _ => output::json(&PathList {
            header: header(output::QLS_SCHEMA, c, ctx.shape().multiplicities(), ctx.shape().parabolic()),
            variant: name,
            count: paths.len(),
            paths: paths.iter().map(|p| p.to_record(&ctx)).collect(),
        })?,
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct DegreeRow {
    dirs: Vec<String>,
    times: Vec<Rational>,
    degree: i64,
    energies: Vec<i64>,
}

#[derive(Serialize)]
struct DegreeCsvRow {
    path: String,
    degree: i64,
    energies: String,
}

#[derive(Serialize)]
struct DegreeTable {
    #[serde(flatten)]
    header: Header,
    count: usize,
    min_degree: Option<i64>,
    rows: Vec<DegreeRow>,
}

fn parse_path(ctx: &Context, s: &str) -> Result<QlsPath, Failure> {
    let parsed = if s.trim_start().starts_with('{') {
        let rec: PathRecord =
            serde_json::from_str(s).map_err(|e| Failure::Input(format!("bad path record: {e}")))?;
        QlsPath::from_record(ctx, &rec)
    } else {
        QlsPath::parse_literal(ctx, s)
    };
    parsed.map_err(|e| match e {
        Error::NotMinimalRep(_) | Error::InvalidPath(_) | Error::TimeOutOfRange(_) => Failure::Check(e.to_string()),
        other => Failure::Input(other.to_string()),
    })
}

pub fn degree(c: &Common, literal: Option<&str>) -> Result<Outcome, Failure> {
    let f = format(c, Format::Json, &[Format::Json, Format::Csv])?;
    let ctx = load(c)?;
    let paths: Vec<QlsPath> = match literal {
        Some(s) => {
            let p = parse_path(&ctx, s)?;
            if !qls::validate(&ctx, &p, Variant::Hat)? {
                return Err(Failure::Check(format!("{} is not a quantum LS path of this shape", p.to_literal(&ctx))));
            }
            vec![p]
        }
        None => qls::enumerate(&ctx, Variant::Hat, c.cap)?.into_iter().collect(),
    };
    let calc = DegreeCalculator::new(&ctx);
    let mut rows = Vec::with_capacity(paths.len());
    for p in &paths {
        rows.push((p.to_literal(&ctx), p.to_record(&ctx), calc.degree(p)?, calc.energies(p)?));
    }
    let text = match f {
        Format::Csv => output::csv(rows.into_iter().map(|(path, _, degree, e)| DegreeCsvRow {
            path,
            degree,
            energies: e.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
        }))?,
        _ => output::json(&DegreeTable {
            header: header(output::DEGREE_SCHEMA, c, ctx.shape().multiplicities(), ctx.shape().parabolic()),
            count: rows.len(),
            min_degree: rows.iter().map(|r| r.2).min(),
            rows: rows
                .into_iter()
                .map(|(_, rec, degree, energies)| DegreeRow { dirs: rec.dirs, times: rec.times, degree, energies })
                .collect(),
        })?,
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn of(failed: usize, inconclusive: usize) -> Self {
        if failed > 0 {
            Status::Fail
        } else if inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

#[derive(Serialize)]
struct CoverSuite {
    status: Status,
    covers_checked: usize,
    edges_checked: usize,
    outside_slice: usize,
    inconclusive: usize,
    mismatches: Vec<Mismatch>,
}

#[derive(Serialize)]
struct EqualitySuite {
    status: Status,
    hat: usize,
    tilde: usize,
}

#[derive(Serialize)]
struct OracleSuite {
    status: Status,
    paths: usize,
    failed: usize,
    inconclusive: usize,
}

#[derive(Serialize)]
struct Suites {
    covers_to_edges: CoverSuite,
    hat_equals_tilde: EqualitySuite,
    degree_vs_oracle: OracleSuite,
}

#[derive(Serialize)]
struct PathCheck {
    #[serde(flatten)]
    report: PathReport,
    degree: i64,
    endpoint_delta: Option<i64>,
}

#[derive(Serialize)]
struct VerifyDoc {
    #[serde(flatten)]
    header: Header,
    window: i64,
    status: Status,
    suites: Suites,
    paths: Vec<PathCheck>,
}

#[derive(Serialize)]
struct VerifyCsvRow {
    path: String,
    status: &'static str,
    degree: i64,
    endpoint_delta: Option<i64>,
    failing_pair: Option<usize>,
}

pub fn verify(c: &Common) -> Result<Outcome, Failure> {
    let f = format(c, Format::Json, &[Format::Json, Format::Csv])?;
    let ctx = load(c)?;
    let hat = qls::enumerate(&ctx, Variant::Hat, c.cap)?;
    let tilde = qls::enumerate(&ctx, Variant::Tilde, c.cap)?;
    let calc = DegreeCalculator::new(&ctx);

    let mut lifted = Vec::with_capacity(hat.len());
    for p in &hat {
        lifted.push((p, calc.lift(p)?, calc.degree(p)?));
    }
    // every search for a lift stays within [0, max δ]
    let needed = lifted
        .iter()
        .flat_map(|(_, l, _)| l.weights.iter().map(|w| w.delta))
        .max()
        .unwrap_or(0)
        .max(1);
    let window = c.window.unwrap_or(needed);
    if window < 0 {
        return Err(Failure::Input("window must be nonnegative".into()));
    }
    let oracle = Oracle::new(&ctx, window);

    let mut paths = Vec::with_capacity(lifted.len());
    let (mut failed, mut inconclusive) = (0, 0);
    for (_, lift, degree) in &lifted {
        let mut report = oracle.report(lift);
        let endpoint_delta = lift.endpoint_delta().ok();
        if report.status == Verdict::Pass && endpoint_delta != Some(-degree) {
            report.status = Verdict::Fail;
            report.reason = Some(format!("endpoint δ {endpoint_delta:?} differs from -Deg = {}", -degree));
        }
        match report.status {
            Verdict::Fail => failed += 1,
            Verdict::Inconclusive => inconclusive += 1,
            Verdict::Pass => {}
        }
        paths.push(PathCheck { report, degree: *degree, endpoint_delta });
    }

    let covers = oracle.covers_to_edges();
    let cover_suite = CoverSuite {
        status: Status::of(covers.mismatches.len(), covers.inconclusive.len()),
        covers_checked: covers.covers_checked,
        edges_checked: covers.edges_checked,
        outside_slice: covers.outside_slice,
        inconclusive: covers.inconclusive.len(),
        mismatches: covers.mismatches,
    };
    let eq_suite = EqualitySuite {
        status: Status::of(usize::from(hat != tilde), 0),
        hat: hat.len(),
        tilde: tilde.len(),
    };
    let oracle_suite = OracleSuite { status: Status::of(failed, inconclusive), paths: paths.len(), failed, inconclusive };

    let total_failed = cover_suite.mismatches.len() + usize::from(hat != tilde) + failed;
    let total_inconclusive = cover_suite.inconclusive + inconclusive;
    let passed = total_failed == 0 && total_inconclusive == 0;

    let text = match f {
        Format::Csv => output::csv(paths.iter().map(|p| VerifyCsvRow {
            path: format!("{}|{}", p.report.dirs.join(";"), p.report.times.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")),
            status: match p.report.status {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inconclusive => "inconclusive",
            },
            degree: p.degree,
            endpoint_delta: p.endpoint_delta,
            failing_pair: p.report.failing_pair,
        }))?,
        _ => output::json(&VerifyDoc {
            header: header(output::VERIFY_SCHEMA, c, ctx.shape().multiplicities(), ctx.shape().parabolic()),
            window,
            status: Status::of(total_failed, total_inconclusive),
            suites: Suites { covers_to_edges: cover_suite, hat_equals_tilde: eq_suite, degree_vs_oracle: oracle_suite },
            paths,
        })?,
    };
    Ok(Outcome { text, passed })
}
