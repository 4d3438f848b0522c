//! Implementations of the subcommands.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use snakeforge_core::contact::{contact_tree_of, realize_shape, BinShape, ContactError};
use snakeforge_core::extract::{arnold_snake_of, isolate_critical_points, ExtractError};
use snakeforge_core::perm::{PermError, Permutation};
use snakeforge_core::poly::{parse_univariate, ParseError};
use snakeforge_core::realize::{realize_snake_with_cap, RealizeError, DEFAULT_MAX_HALVINGS};
use snakeforge_core::septree::{SepTreeError, SignedTree};
use snakeforge_core::valuation::{area_report, ValuationError};
use snakeforge_core::{Poly, Rat};

use crate::render::{rat_to_decimal, tree_inline};
use crate::{CliError, ReportFormat, TreeFormat, TreeKind};

const MAX_ENUMERATION_N: usize = 10;

fn parse_perm(text: &str) -> Result<Permutation, CliError> {
    text.parse()
        .map_err(|e: PermError| CliError::Usage(e.to_string()))
}

fn parse_poly(text: &str) -> Result<Poly, CliError> {
    parse_univariate(text).map_err(|e: ParseError| CliError::Usage(e.to_string()))
}

fn map_realize(e: RealizeError) -> CliError {
    match e {
        RealizeError::NotASnake
        | RealizeError::NotSeparable
        | RealizeError::WrongOrientation
        | RealizeError::WitnessSearchExhausted { .. } => CliError::Domain(e.to_string()),
        RealizeError::IndexOutOfRange { .. } | RealizeError::InternalMismatch(_) => {
            CliError::Internal(e.to_string())
        }
    }
}

fn map_contact(e: ContactError) -> CliError {
    match e {
        ContactError::InternalMismatch(_) => CliError::Internal(e.to_string()),
        other => CliError::Domain(other.to_string()),
    }
}

fn map_valuation(e: ValuationError) -> CliError {
    match e {
        ValuationError::InternalMismatch(_) => CliError::Internal(e.to_string()),
        ValuationError::Contact(inner) => map_contact(inner),
        other => CliError::Domain(other.to_string()),
    }
}

fn map_extract(e: ExtractError) -> CliError {
    CliError::Domain(e.to_string())
}

/// Witness-search cap, overridable through SNAKEFORGE_MAX_HALVINGS.
fn witness_cap() -> Result<u32, CliError> {
    match std::env::var("SNAKEFORGE_MAX_HALVINGS") {
        Err(_) => Ok(DEFAULT_MAX_HALVINGS),
        Ok(text) => text.parse::<u32>().map_err(|_| {
            CliError::Usage(format!(
                "SNAKEFORGE_MAX_HALVINGS must be a nonnegative integer, got {text:?}"
            ))
        }),
    }
}

pub fn check(perm: &str, format: ReportFormat) -> Result<(), CliError> {
    let p = parse_perm(perm)?;
    let snake = p.is_snake();
    let separable = p.is_separable();
    let tree = SignedTree::build(&p);
    match (&tree, separable) {
        (Ok(_), true) | (Err(SepTreeError::NotSeparable), false) => {}
        _ => {
            return Err(CliError::Internal(
                "pattern avoidance and the tree builder disagree on separability".into(),
            ))
        }
    }
    let n = p.len();
    let orientation = if n < 2 {
        "none"
    } else if p.apply(n - 1) > p.apply(n) {
        "descending"
    } else {
        "ascending"
    };
    match format {
        ReportFormat::Text => {
            println!("permutation: {p}");
            println!("snake: {}", if snake { "yes" } else { "no" });
            println!("separable: {}", if separable { "yes" } else { "no" });
            println!("orientation: {orientation}");
            if let Ok(t) = &tree {
                println!("separating tree: {}", tree_inline(t));
            }
        }
        ReportFormat::Json => {
            let tree_json = tree
                .ok()
                .map(|t| serde_json::to_value(&t).expect("tree serialises"));
            let out = json!({
                "permutation": p.to_string(),
                "snake": snake,
                "separable": separable,
                "orientation": orientation,
                "tree": tree_json,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(())
}

pub fn realize(perm: &str, format: ReportFormat) -> Result<(), CliError> {
    let p = parse_perm(perm)?;
    let cap = witness_cap()?;
    let r = realize_snake_with_cap(&p, cap).map_err(map_realize)?;
    match format {
        ReportFormat::Text => {
            println!("sigma: {}", r.sigma);
            println!("separating tree: {}", tree_inline(&r.tree));
            for (i, root) in r.roots.iter().enumerate() {
                println!("a_{}: {root}", i + 1);
            }
            println!("P: {}", r.p);
            println!("Q: {}", r.q);
            println!("witness x*: {}", r.witness_x);
            let values: Vec<String> = r.critical_values.iter().map(|v| v.to_string()).collect();
            println!("critical values: [{}]", values.join(", "));
            println!("verified snake: {}", r.verified_snake);
        }
        ReportFormat::Json => println!("{}", r.to_json()),
    }
    Ok(())
}

pub fn snake_of(poly: &str, format: ReportFormat) -> Result<(), CliError> {
    let p = parse_poly(poly)?;
    let cert = arnold_snake_of(&p).map_err(map_extract)?;
    match format {
        ReportFormat::Text => {
            println!("snake: {}", cert.critical_value_order);
            println!("degree: {}", cert.degree);
            println!("leading coefficient: {}", cert.leading_coefficient);
            println!("critical points:");
            for r in &cert.critical_points {
                println!("  ({}, {}]", r.lo, r.hi);
            }
        }
        ReportFormat::Json => println!("{}", cert.to_json()),
    }
    Ok(())
}

pub fn valuation(roots: &[String], format: ReportFormat) -> Result<(), CliError> {
    let family: Vec<Poly> = roots
        .iter()
        .map(|t| parse_poly(t))
        .collect::<Result<_, _>>()?;
    let report = area_report(&family).map_err(map_valuation)?;
    match format {
        ReportFormat::Text => {
            println!(
                "{:>3} {:>5} {:>8} {:>7} {:>6}  c-coefficients",
                "i", "e_i", "formula", "oracle", "side"
            );
            for row in &report.rows {
                let cmap: Vec<String> = row
                    .c_coefficients
                    .iter()
                    .map(|t| format!("{}*v{}", t.leaf_count, t.valuation))
                    .collect();
                println!(
                    "{:>3} {:>5} {:>8} {:>7} {:>6}  {}",
                    row.index,
                    row.gap_valuation,
                    row.formula_valuation,
                    row.oracle_valuation,
                    format!("{:?}", row.side).to_lowercase(),
                    cmap.join(" + ")
                );
            }
        }
        ReportFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }
    Ok(())
}

struct CensusRow {
    n: usize,
    permutations: u64,
    snakes: u64,
    separable: u64,
    descending_separable_snakes: u64,
    verified_pass: u64,
    verified_fail: u64,
}

fn for_each_permutation(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        if current.len() == n {
            f(current);
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                current.push(v);
                rec(n, current, used, f);
                current.pop();
                used[v - 1] = false;
            }
        }
    }
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], f);
}

pub fn enumerate(
    max_n: usize,
    verify: bool,
    sample: usize,
    seed: u64,
    jobs: usize,
    format: ReportFormat,
) -> Result<(), CliError> {
    if max_n == 0 || max_n > MAX_ENUMERATION_N {
        return Err(CliError::Usage(format!(
            "--max-n must be between 1 and {MAX_ENUMERATION_N}"
        )));
    }
    let cap = witness_cap()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;

    let mut rows = Vec::new();
    for n in 1..=max_n {
        let mut permutations = 0u64;
        let mut snakes = 0u64;
        let mut separable = 0u64;
        let mut candidates: Vec<Permutation> = Vec::new();
        let cross_check_patterns = n <= 8;
        let mut mismatch = false;
        for_each_permutation(n, &mut |images| {
            permutations += 1;
            let p = Permutation::new(images.to_vec()).expect("generator yields bijections");
            let snake = p.is_snake();
            if snake {
                snakes += 1;
            }
            let tree_separable = SignedTree::build(&p).is_ok();
            if cross_check_patterns && tree_separable != p.is_separable() {
                mismatch = true;
            }
            if tree_separable {
                separable += 1;
                let descending = n < 2 || p.apply(n - 1) > p.apply(n);
                if snake && descending {
                    candidates.push(p);
                }
            }
        });
        if mismatch {
            return Err(CliError::Internal(
                "pattern avoidance and the tree builder disagree on separability".into(),
            ));
        }

        let descending_separable_snakes = candidates.len() as u64;
        let (verified_pass, verified_fail) = if verify {
            let chosen: Vec<Permutation> = if sample > 0 && sample < candidates.len() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
                rand::seq::index::sample(&mut rng, candidates.len(), sample)
                    .into_iter()
                    .map(|i| candidates[i].clone())
                    .collect()
            } else {
                candidates
            };
            pool.install(|| {
                chosen
                    .par_iter()
                    .map(|p| match realize_snake_with_cap(p, cap) {
                        Ok(r) if r.verified_snake == *p => (1u64, 0u64),
                        _ => (0u64, 1u64),
                    })
                    .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
            })
        } else {
            (0, 0)
        };

        rows.push(CensusRow {
            n,
            permutations,
            snakes,
            separable,
            descending_separable_snakes,
            verified_pass,
            verified_fail,
        });
    }

    match format {
        ReportFormat::Text => {
            let header = if verify {
                format!(
                    "{:>3} {:>10} {:>8} {:>10} {:>12} {:>9} {:>9}",
                    "n", "perms", "snakes", "separable", "desc snakes", "verified", "failures"
                )
            } else {
                format!(
                    "{:>3} {:>10} {:>8} {:>10} {:>12}",
                    "n", "perms", "snakes", "separable", "desc snakes"
                )
            };
            println!("{header}");
            for row in &rows {
                if verify {
                    println!(
                        "{:>3} {:>10} {:>8} {:>10} {:>12} {:>9} {:>9}",
                        row.n,
                        row.permutations,
                        row.snakes,
                        row.separable,
                        row.descending_separable_snakes,
                        row.verified_pass,
                        row.verified_fail
                    );
                } else {
                    println!(
                        "{:>3} {:>10} {:>8} {:>10} {:>12}",
                        row.n,
                        row.permutations,
                        row.snakes,
                        row.separable,
                        row.descending_separable_snakes
                    );
                }
            }
        }
        ReportFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = json!({
                        "n": r.n,
                        "permutations": r.permutations,
                        "snakes": r.snakes,
                        "separable": r.separable,
                        "descending_separable_snakes": r.descending_separable_snakes,
                    });
                    if verify {
                        obj["verified_pass"] = json!(r.verified_pass);
                        obj["verified_fail"] = json!(r.verified_fail);
                    }
                    obj
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }

    if verify && rows.iter().any(|r| r.verified_fail > 0) {
        return Err(CliError::Internal(
            "realisation verification failed for some separable descending snake".into(),
        ));
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<(Rat, Rat), CliError> {
    let Some((lo, hi)) = text.split_once(':') else {
        return Err(CliError::Usage(format!(
            "--range must be LO:HI, got {text:?}"
        )));
    };
    let parse = |t: &str| {
        t.trim()
            .parse::<Rat>()
            .map_err(|e| CliError::Usage(format!("bad rational {t:?} in --range: {e}")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo >= hi {
        return Err(CliError::Usage("--range must satisfy LO < HI".into()));
    }
    Ok((lo, hi))
}

/// Range covering all critical points with a quarter-span margin.
fn default_range(p: &Poly) -> (Rat, Rat) {
    let fallback = (-snakeforge_core::rat_int(1), snakeforge_core::rat_int(1));
    if p.degree().unwrap_or(0) < 2 {
        return fallback;
    }
    let Ok(points) = isolate_critical_points(p) else {
        return fallback;
    };
    if points.is_empty() {
        return fallback;
    }
    let lo = points.first().unwrap().lo.clone();
    let hi = points.last().unwrap().hi.clone();
    let span = &hi - &lo;
    let margin = if span == snakeforge_core::rat_int(0) {
        snakeforge_core::rat_int(1)
    } else {
        span / snakeforge_core::rat_int(4)
    };
    (&lo - &margin, &hi + &margin)
}

pub fn plot_data(
    poly: Option<&str>,
    perm: Option<&str>,
    samples: usize,
    precision: usize,
    range: Option<&str>,
) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let target = match (poly, perm) {
        (Some(text), None) => parse_poly(text)?,
        (None, Some(text)) => {
            let p = parse_perm(text)?;
            let cap = witness_cap()?;
            let r = realize_snake_with_cap(&p, cap).map_err(map_realize)?;
            r.q.specialize_x(&r.witness_x)
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --poly or --perm is required".into(),
            ))
        }
    };
    let (lo, hi) = match range {
        Some(text) => parse_range(text)?,
        None => default_range(&target),
    };
    println!("y,value");
    let steps = samples.saturating_sub(1).max(1);
    let width = &hi - &lo;
    for i in 0..samples {
        let t = &lo + &(&width * &Rat::new(i.into(), steps.into()));
        let v = target.eval(&t);
        println!(
            "{},{}",
            rat_to_decimal(&t, precision),
            rat_to_decimal(&v, precision)
        );
    }
    Ok(())
}

pub fn export_tree(perm: &str, kind: TreeKind, format: TreeFormat) -> Result<(), CliError> {
    let p = parse_perm(perm)?;
    let tree = SignedTree::build(&p).map_err(|e| CliError::Domain(e.to_string()))?;
    match kind {
        TreeKind::Separating => match format {
            TreeFormat::Json => println!("{}", tree.to_json()),
            TreeFormat::Dot => print!("{}", tree.to_dot()),
        },
        TreeKind::Contact => {
            let roots = realize_shape(&BinShape::from(&tree));
            let contact = contact_tree_of(&roots).map_err(map_contact)?;
            match format {
                TreeFormat::Json => println!("{}", contact.to_json()),
                TreeFormat::Dot => print!("{}", contact.to_dot()),
            }
        }
    }
    Ok(())
}
