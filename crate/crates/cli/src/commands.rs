use std::collections::BTreeMap;
use std::path::Path;

use cliffconic::brauer_severi::{
    assemble_report, bs_matrix_of, conic_equation_of, conic_point_count, minor_quotient,
    universal_entries, UNIVERSAL_NAMES,
};
use cliffconic::catalog::{make_f25plus, make_type, DelPezzoTag, FormSource, QuadricNet};
use cliffconic::clifford::{
    fiber_algebra, gamma_dimension_bruteforce, gamma_hilbert_series, recover_form,
    trace_pairing_global, AlgebraType,
};
use cliffconic::exactpoly::{Domain, Matrix, PolyMatrix, Scalar, DEFAULT_PRIME};
use cliffconic::invariants::report;
use cliffconic::qform::{
    projective_points, singularity_type_at, FiberConicType, FiberPoint, QForm, SingularityType,
    BASE_NAMES,
};
use serde_json::{json, Value};

use crate::input::{InputDocument, Parsed};
use crate::pool::{par_map, worker_count};
use crate::{CliError, Command};

/// Largest field over which `validate` inspects every singular point of the
/// discriminant.
const SINGULARITY_SCAN_LIMIT: u64 = 101;

pub struct Outcome {
    pub payload: Value,
    pub summary: String,
}

fn outcome(payload: Value, summary: String) -> Result<Outcome, CliError> {
    Ok(Outcome { payload, summary })
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate(a) => validate(&a.input),
        Command::Normalize(a) => normalize(&a.input),
        Command::Disc(a) => disc(&a.input),
        Command::Fiber(a) => fiber(&a.input, &a.point, false),
        Command::Classify(a) => fiber(&a.input, &a.point, true),
        Command::BsvVerify { input, symbolic } => bsv_verify(input.as_deref(), *symbolic),
        Command::TracePairing(a) => trace_pairing(&a.input),
        Command::Recover(a) => recover(&a.input),
        Command::Invariants { tag } => invariants(tag),
        Command::Catalog {
            tag,
            seed,
            prime,
            rational,
        } => catalog(tag, *seed, *prime, *rational),
        Command::Hilbert { input, order } => hilbert(input, *order),
        Command::Scan { input, prime } => scan(input, *prime),
    }
}

fn load(path: &Path) -> Result<(InputDocument, Parsed), CliError> {
    let doc = InputDocument::read(path)?;
    let parsed = doc.parse(None)?;
    Ok((doc, parsed))
}

fn load_form(path: &Path) -> Result<QForm, CliError> {
    match load(path)?.1 {
        Parsed::Form(q) => Ok(q),
        Parsed::Net(_) => Err(CliError::Input(
            "this command needs a `form` document".into(),
        )),
    }
}

fn strings<T: ToString + Clone>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn algebra_json(t: AlgebraType) -> Value {
    json!({ "tag": t.tag(), "name": format!("{t:?}") })
}

fn validate(path: &Path) -> Result<Outcome, CliError> {
    let (doc, parsed) = load(path)?;
    let domain = doc.domain()?;
    match parsed {
        Parsed::Form(q) => {
            let disc = q.discriminant();
            let degrees: Vec<Vec<i64>> = (0..3)
                .map(|i| (0..3).map(|j| q.entry_degree(i, j)).collect())
                .collect();
            let mut payload = json!({
                "kind": "form",
                "scalar_domain": domain.to_string(),
                "a": q.a(),
                "d": q.d(),
                "entry_degrees": degrees,
                "discriminant_degree": q.discriminant_degree(),
                "discriminant_nonzero": !disc.is_zero(),
                "normalized": q.is_normalized(),
            });
            // singular points of the discriminant, exhaustively over small fields
            if let Domain::Prime(p) = domain {
                if p <= SINGULARITY_SCAN_LIMIT && !disc.is_zero() {
                    let points: Vec<FiberPoint> = projective_points(domain).collect();
                    let kinds = par_map(&points, worker_count()?, |pt| {
                        singularity_type_at(&disc, pt)
                    });
                    let (mut nodes, mut worse) = (0, 0);
                    for k in kinds {
                        match k? {
                            SingularityType::Node => nodes += 1,
                            SingularityType::WorseSingularity => worse += 1,
                            _ => {}
                        }
                    }
                    payload["discriminant_singularities"] =
                        json!({ "nodes": nodes, "worse": worse });
                }
            }
            let summary = format!(
                "valid form, pattern a = {:?}, d = {}, discriminant degree {}{}",
                q.a(),
                q.d(),
                q.discriminant_degree(),
                if disc.is_zero() {
                    " (identically zero)"
                } else {
                    ""
                }
            );
            outcome(payload, summary)
        }
        Parsed::Net(net) => {
            let det = net.det5();
            let payload = json!({
                "kind": "net",
                "scalar_domain": domain.to_string(),
                "det_degree": det.degree(),
                "det_nonzero": !det.is_zero(),
            });
            let summary = match det.degree() {
                Some(n) => format!("valid net, det A of degree {n}"),
                None => "valid net, but det A vanishes identically".to_string(),
            };
            outcome(payload, summary)
        }
    }
}

fn normalize(path: &Path) -> Result<Outcome, CliError> {
    let q = load_form(path)?;
    let n = q.normalize();
    let twist = n.a()[0] - q.a()[0];
    let payload = json!({
        "twist": twist,
        "a": n.a(),
        "d": n.d(),
        "document": InputDocument::from_form(&n),
    });
    outcome(
        payload,
        format!("twist by {twist}: a = {:?}, d = {}", n.a(), n.d()),
    )
}

fn disc(path: &Path) -> Result<Outcome, CliError> {
    let (f, what) = match load(path)?.1 {
        Parsed::Form(q) => (q.discriminant(), "discriminant"),
        Parsed::Net(net) => (net.det5(), "det A"),
    };
    let payload = json!({ "polynomial": f.to_string(), "degree": f.degree() });
    outcome(payload, format!("{what} = {f}"))
}

/// The 3x3 scalar form over a point, from a form or through the projection.
fn fiber_form(parsed: &Parsed, p: &FiberPoint) -> Result<Matrix<Scalar>, CliError> {
    Ok(match parsed {
        Parsed::Form(q) => q.at(p),
        Parsed::Net(net) => make_f25plus(net.clone()).fiber_form(p)?,
    })
}

fn fiber(path: &Path, point: &str, classify_only: bool) -> Result<Outcome, CliError> {
    let (doc, parsed) = load(path)?;
    let domain = doc.domain()?;
    let p = FiberPoint::parse(point, domain)?;
    let at = fiber_form(&parsed, &p)?;
    let kind = fiber_algebra(&at).classify()?;
    if classify_only {
        let payload = json!({ "point": p.to_string(), "algebra_type": algebra_json(kind) });
        return outcome(payload, format!("type {} ({kind:?}) at {p}", kind.tag()));
    }
    let rank = at.rank();
    let conic = FiberConicType::from_rank(rank);
    if AlgebraType::for_form_rank(rank) != kind {
        return Err(CliError::Internal(format!(
            "rank {rank} fiber classified as {kind:?}"
        )));
    }
    let mut payload = json!({
        "point": p.to_string(),
        "fiber_form": strings(&at),
        "rank": rank,
        "conic_type": conic,
        "algebra_type": algebra_json(kind),
        "azumaya": rank == 3,
    });
    if let Domain::Prime(_) = domain {
        payload["conic_points"] = json!(conic_point_count(&at));
    }
    outcome(
        payload,
        format!("rank {rank}, {}, type {} at {p}", conic.name(), kind.tag()),
    )
}

fn bsv_verify(input: Option<&Path>, symbolic: bool) -> Result<Outcome, CliError> {
    let (entries, names): (PolyMatrix, Vec<&str>) = match (input, symbolic) {
        (_, true) => (
            universal_entries(Domain::Rational),
            UNIVERSAL_NAMES.to_vec(),
        ),
        (Some(path), false) => (load_form(path)?.entries().clone(), BASE_NAMES.to_vec()),
        (None, false) => {
            return Err(CliError::Input(
                "give an input document or --symbolic".into(),
            ))
        }
    };
    let m = bs_matrix_of(&entries);
    let conic = conic_equation_of(&entries);
    let positions: Vec<(usize, usize)> =
        (1..=4).flat_map(|r| (1..=4).map(move |c| (r, c))).collect();
    let quotients = par_map(&positions, worker_count()?, |&(r, c)| {
        minor_quotient(&m, &conic, r, c)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let report = assemble_report(&conic, &quotients, &names);
    let summary = format!(
        "all 16 minors divisible by q(α); named minors {}",
        if report.claimed_all_match {
            "as claimed"
        } else {
            "differ from the claimed labels"
        }
    );
    outcome(serde_json::to_value(&report).unwrap(), summary)
}

fn trace_pairing(path: &Path) -> Result<Outcome, CliError> {
    let q = load_form(path)?;
    let p = trace_pairing_global(&q);
    let payload = json!({ "matrix": strings(&p) });
    outcome(payload, "trace pairing -Adj Q computed".into())
}

fn recover(path: &Path) -> Result<Outcome, CliError> {
    let q = load_form(path)?;
    let back = recover_form(&trace_pairing_global(&q))?;
    let sign = if back == *q.entries() {
        "+"
    } else if back == q.entries().neg() {
        "-"
    } else {
        return Err(CliError::Internal(
            "recovered matrix is neither Q nor -Q".into(),
        ));
    };
    let payload = json!({ "sign": sign, "recovered": strings(&back), "round_trip": true });
    outcome(payload, format!("recovered {sign}Q"))
}

fn invariants(tag: &str) -> Result<Outcome, CliError> {
    let tag: DelPezzoTag = tag.parse()?;
    let r = report(tag)?;
    let summary = format!(
        "{tag}: -K^3 = {}, h12 = {}, chi(A/O) = {}, c2 = {}",
        r.minus_k3, r.h12, r.chi_ao, r.c2
    );
    outcome(serde_json::to_value(&r).unwrap(), summary)
}

fn catalog(tag: &str, seed: u64, prime: Option<u64>, rational: bool) -> Result<Outcome, CliError> {
    let tag: DelPezzoTag = tag.parse()?;
    let domain = if rational {
        Domain::Rational
    } else {
        Domain::prime(prime.unwrap_or(DEFAULT_PRIME))?
    };
    let document = match tag {
        DelPezzoTag::F25Plus => InputDocument::from_net(&QuadricNet::seeded(seed, domain)?),
        _ => InputDocument::from_form(&make_type(tag, FormSource::Seed { seed, domain })?),
    };
    let payload = json!({
        "type": tag,
        "seed": seed,
        "info": tag.info(),
        "document": document,
    });
    outcome(payload, format!("{tag} over {domain} from seed {seed}"))
}

fn hilbert(path: &Path, order: usize) -> Result<Outcome, CliError> {
    let q = load_form(path)?;
    let series = gamma_hilbert_series(&q)?;
    let coefficients = series.expand(order)?;
    let agrees = coefficients.iter().enumerate().all(|(n, c)| {
        match gamma_dimension_bruteforce(&q, n as i64) {
            Ok(count) => *c == count.into(),
            Err(_) => c == &0.into(),
        }
    });
    if !agrees {
        return Err(CliError::Internal(
            "series disagrees with enumeration".into(),
        ));
    }
    let payload = json!({
        "series": series.to_string(),
        "numerator": series.numerator(),
        "denominator": series.denominator(),
        "coefficients": coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "enumeration_agrees": agrees,
    });
    outcome(payload, format!("{series}"))
}

fn scan(path: &Path, prime: Option<u64>) -> Result<Outcome, CliError> {
    let doc = InputDocument::read(path)?;
    let domain = match prime {
        Some(p) => Domain::prime(p)?,
        None => match doc.domain()? {
            d @ Domain::Prime(_) => d,
            Domain::Rational => return Err(CliError::Input("scan over Q needs --prime".into())),
        },
    };
    let parsed = doc.parse(Some(domain))?;
    let points: Vec<FiberPoint> = projective_points(domain).collect();
    let results = par_map(&points, worker_count()?, |p| -> Result<_, CliError> {
        let at = fiber_form(&parsed, p)?;
        Ok((
            FiberConicType::from_rank(at.rank()),
            fiber_algebra(&at).classify()?,
        ))
    });
    let mut census: BTreeMap<&str, usize> =
        FiberConicType::ALL.iter().map(|t| (t.name(), 0)).collect();
    let mut algebras: BTreeMap<String, usize> = (1..=5).map(|t| (t.to_string(), 0)).collect();
    for r in results {
        let (conic, kind) = r?;
        *census.get_mut(conic.name()).unwrap() += 1;
        *algebras.get_mut(&kind.tag().to_string()).unwrap() += 1;
    }
    let summary = FiberConicType::ALL
        .iter()
        .map(|t| format!("{} {}", t.name(), census[t.name()]))
        .collect::<Vec<_>>()
        .join(", ");
    let payload = json!({
        "prime": domain.characteristic(),
        "points": points.len(),
        "census": census,
        "algebra_types": algebras,
    });
    outcome(payload, format!("{} points: {summary}", points.len()))
}
