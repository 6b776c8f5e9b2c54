//! Command-line front end. Every command prints one JSON document with
//! sorted keys; failures print `{"error": ..., "position": ...}` and exit 2.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::alexander::{alexander_from_pairing, default_variable_names, mazur_alexander, mazur_pairing};
use crate::covering_links::{handlebody_cover_linking, spherical_cover_linking, FiniteGroupSpec};
use crate::error::{Error, Result};
use crate::formats::{
    class_to_json, multiset_to_json, parse_base_set, parse_ccomplex, parse_class, parse_complex, parse_group,
};
use crate::group_ring::{factor_bounded_univariate, parse_monomial_unit, parse_poly, LaurentPoly, RationalFunction};
use crate::satellite::{
    distinguish_family, is_admissible, mazur_specialized, odd_primes_up_to, satellite_class, satellite_set,
    BaseTorsionSet, SatelliteSpec,
};
use crate::torsion_quotient::{make_class, parity_key};

pub const PRIME_BOUND_VAR: &str = "CONCORDIA_PRIME_BOUND";
const DEFAULT_PRIME_BOUND: u64 = 100;

#[derive(Parser, Debug)]
#[command(name = "concordia", version, about = "Almost-concordance invariants with JSON certificates")]
pub struct Cli {
    /// Comma-separated ring variable names (overrides any in the input file).
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alexander polynomial of a C-complex document.
    Alex { file: PathBuf },
    /// Mazur pattern P_n: pairing, Alexander polynomial and specialization.
    Mazur { n: i64 },
    /// Parity homomorphism Φ_g of a torsion class.
    Parity {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        class: PathBuf,
    },
    /// Torsion class of the Mazur satellite P_n(K).
    Satellite {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        pattern_n: i64,
        #[arg(long, default_value = "u^2", allow_hyphen_values = true)]
        longitude: String,
    },
    /// Pairwise parity certificates for the Mazur family.
    Distinguish {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Base torsion set; trivial when omitted.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, default_value = "u^2", allow_hyphen_values = true)]
        longitude: String,
    },
    /// Linking multisets of covering links.
    Cover {
        #[command(subcommand)]
        model: CoverModel,
    },
    /// Torsion of a based chain complex document.
    Torsion { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CoverModel {
    Spherical(SphericalArgs),
    Handlebody {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        twist: i64,
        #[arg(long)]
        two_torsion: bool,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        dist: i64,
    },
}

#[derive(Args, Debug)]
pub struct SphericalArgs {
    /// Order of a cyclic deck group.
    #[arg(long, required_unless_present = "table")]
    order: Option<usize>,
    #[arg(long, requires = "order")]
    g_index: Option<usize>,
    /// Multiplication-table group document.
    #[arg(long, conflicts_with = "order")]
    table: Option<PathBuf>,
    #[arg(long)]
    twist: i64,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn prime_bound() -> Result<u64> {
    match std::env::var(PRIME_BOUND_VAR) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Error::InvalidParameter(format!("{PRIME_BOUND_VAR}={v} is not an integer")))
        }
        Err(_) => Ok(DEFAULT_PRIME_BOUND),
    }
}

fn poly_matrix_json(m: &[Vec<LaurentPoly>], vars: &[String]) -> Value {
    m.iter().map(|r| r.iter().map(|p| p.to_string_with(vars)).collect::<Vec<_>>()).collect()
}

fn spec_for(longitude: &str, vars: &[String]) -> Result<SatelliteSpec> {
    SatelliteSpec::new(parse_monomial_unit(longitude, vars)?)
}

fn alex(file: &Path, vars: Option<&[String]>) -> Result<Value> {
    let (pairing, lk) = parse_ccomplex(&read(file)?, vars)?;
    let names = pairing.variable_names().to_vec();
    let det = pairing.determinant()?;
    let result = alexander_from_pairing(&pairing, lk)?;
    Ok(json!({
        "alexander": result.poly.to_string_with(&names),
        "determinant": det.to_string_with(&names),
        "pairing": poly_matrix_json(pairing.matrix(), &names),
        "components": pairing.components(),
        "generators": pairing.generators(),
        "linking_number": lk,
        "torres_checked": result.normalized,
        "variables": names,
    }))
}

fn mazur(n: i64) -> Result<Value> {
    let st = default_variable_names(2);
    let closed = mazur_alexander(n)?;
    let pairing = mazur_pairing(n)?;
    let from_det = alexander_from_pairing(&pairing, 1)?;
    let agrees = from_det.poly == closed.poly.canonical()?;
    let u = vec!["u".to_string()];
    let specialized = mazur_specialized(n, &SatelliteSpec::doubled_generator(1))?;
    Ok(json!({
        "n": n,
        "alexander": closed.poly.to_string_with(&st),
        "pairing": poly_matrix_json(pairing.matrix(), &st),
        "determinant": from_det.poly.to_string_with(&st),
        "determinant_matches": agrees,
        "torres_value": closed.poly.eval_at_ones().to_string(),
        "specialized": specialized.to_string_with(&u),
        "variables": st,
    }))
}

fn parity(g: &str, class: &Path, vars: Option<&[String]>) -> Result<Value> {
    let (c, vars) = parse_class(&read(class)?, vars)?;
    let g = parse_poly(g, &vars)?;
    let key = parity_key(&g)?;
    Ok(json!({
        "g": key.to_string_with(&vars),
        "parity": c.parity(&g)?,
        "class": class_to_json(&c.canonicalize()?, &vars),
        "variables": vars,
    }))
}

fn satellite(base: &Path, n: i64, longitude: &str, vars: Option<&[String]>) -> Result<Value> {
    let (c, vars) = parse_class(&read(base)?, vars)?;
    let spec = spec_for(longitude, &vars)?;
    let g = mazur_specialized(n, &spec)?;
    let hint = [(g.clone(), 1)];
    let hint = (!spec.is_verified_case()).then_some(&hint[..]);
    let out = satellite_class(&c, &g, hint)?;
    Ok(json!({
        "pattern_n": n,
        "longitude": spec.longitude_image().display(&vars).to_string(),
        "specialized": g.to_string_with(&vars),
        "verified_irreducible": spec.is_verified_case(),
        "base": class_to_json(&c, &vars),
        "class": class_to_json(&out, &vars),
        "canonical": class_to_json(&out.canonicalize()?, &vars),
        "variables": vars,
    }))
}

fn distinguish(primes: &[u64], base: Option<&Path>, longitude: &str, vars: Option<&[String]>) -> Result<Value> {
    let (base, vars) = match base {
        Some(path) => parse_base_set(&read(path)?, vars)?,
        None => (BaseTorsionSet::trivial(), vars.map_or_else(|| vec!["u".to_string()], |v| v.to_vec())),
    };
    let spec = spec_for(longitude, &vars)?;
    let bound = prime_bound()?;
    let mut admissible = Vec::new();
    for p in odd_primes_up_to(bound) {
        if is_admissible(&base, p, &spec)? {
            admissible.push(p);
        }
    }
    let mut requested = serde_json::Map::new();
    for &p in primes {
        requested.insert(p.to_string(), json!(is_admissible(&base, p, &spec)?));
    }
    let mut polys = serde_json::Map::new();
    let mut sets = Vec::new();
    let mut gs = Vec::new();
    for &p in primes {
        let g = mazur_specialized(p as i64, &spec)?;
        let set = satellite_set(&base, p, &spec)?;
        polys.insert(p.to_string(), json!(g.to_string_with(&vars)));
        gs.push(g);
        sets.push(set);
    }
    // table[label][i][j] = Φ_{g_{p_j}} on the element of I_{p_i}.
    let mut table: BTreeMap<String, Vec<Vec<u8>>> = BTreeMap::new();
    for label in base.classes().keys() {
        let rows = sets
            .iter()
            .map(|set| gs.iter().map(|g| set.classes()[label].parity(g)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        table.insert(label.clone(), rows);
    }
    let mut pairs = Vec::new();
    let mut all = true;
    for (i, &n) in primes.iter().enumerate() {
        for &m in &primes[i + 1..] {
            let cert = distinguish_family(&base, n, m, &spec)?;
            all &= cert.distinguishable;
            pairs.push(json!({
                "n": n,
                "m": m,
                "distinguishable": cert.distinguishable,
                "separating": cert.separating_prime.map(|_| cert.g_m.to_string_with(&vars)),
                "values": cert.table,
            }));
        }
    }
    Ok(json!({
        "primes": primes,
        "longitude": spec.longitude_image().display(&vars).to_string(),
        "verified_irreducible": spec.is_verified_case(),
        "polynomials": polys,
        "parity_table": table,
        "pairs": pairs,
        "distinguishable": all,
        "admissibility": {"bound": bound, "admissible": admissible, "requested": requested},
        "variables": vars,
    }))
}

fn cover(model: &CoverModel) -> Result<Value> {
    let (s, model_json) = match model {
        CoverModel::Spherical(a) => {
            let group = match (&a.table, a.order) {
                (Some(path), _) => parse_group(&read(path)?)?,
                (None, Some(order)) => FiniteGroupSpec::cyclic(order, a.g_index.unwrap_or(1))?,
                (None, None) => return Err(Error::Input("need --order or --table".into())),
            };
            group.check_associative()?;
            let s = spherical_cover_linking(&group, a.twist)?;
            (s, json!({"model": "spherical", "order": group.order(), "g": group.distinguished(), "twist": a.twist}))
        }
        CoverModel::Handlebody { k, twist, two_torsion, dist } => {
            let s = handlebody_cover_linking(*k, *twist, *two_torsion, *dist)?;
            (s, json!({"model": "handlebody", "k": k, "twist": twist, "two_torsion": two_torsion, "dist": dist}))
        }
    };
    let mut out = multiset_to_json(&s);
    out["max"] = json!(s.max());
    out["input"] = model_json;
    Ok(out)
}

/// Tries to read off the class of `τ` with the bounded factorizer.
fn torsion_class_json(tau: &RationalFunction, vars: &[String]) -> Result<Value> {
    let mut items = Vec::new();
    for (p, sign) in [(tau.numerator(), 1i64), (tau.denominator(), -1)] {
        if p.constant_value().is_some() {
            continue;
        }
        match factor_bounded_univariate(p) {
            Ok(f) => items.extend(f.factors.iter().map(|(q, m)| (q.clone(), sign * *m as i64))),
            Err(_) => return Ok(Value::Null),
        }
    }
    let class = make_class(&items, true)?.canonicalize()?;
    Ok(json!({"canonical": class_to_json(&class, vars), "trivial": class.is_empty()}))
}

fn torsion(file: &Path, vars: Option<&[String]>) -> Result<Value> {
    let (c, vars) = parse_complex(&read(file)?, vars)?;
    if !c.check_complex()? {
        return Err(Error::NotAComplex { degree: 1 });
    }
    let homology = c.homology_ranks()?;
    let acyclic = homology.iter().all(|&h| h == 0);
    let mut out = json!({"acyclic": acyclic, "homology_ranks": homology, "ranks": c.ranks(), "variables": vars});
    if acyclic {
        let tau = c.torsion()?;
        out["torsion"] = json!(tau.to_string_with(&vars));
        out["class"] = torsion_class_json(&tau, &vars)?;
    }
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<Value> {
    let vars = cli.vars.as_deref();
    match &cli.command {
        Command::Alex { file } => alex(file, vars),
        Command::Mazur { n } => mazur(*n),
        Command::Parity { g, class } => parity(g, class, vars),
        Command::Satellite { base, pattern_n, longitude } => satellite(base, *pattern_n, longitude, vars),
        Command::Distinguish { primes, base, longitude } => distinguish(primes, base.as_deref(), longitude, vars),
        Command::Cover { model } => cover(model),
        Command::Torsion { file } => torsion(file, vars),
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": e.to_string(), "position": e.position()})
}

/// Parses `args` (program name first) and runs the command, returning the
/// output document and exit code.
pub fn run<I, T>(args: I) -> (Value, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match execute(&cli) {
            Ok(v) => (v, 0),
            Err(e) => (error_json(&e), 2),
        },
        Err(e) => (json!({"error": e.to_string(), "position": null}), 2),
    }
}
