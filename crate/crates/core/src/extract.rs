//! The converse direction: given a Morse polynomial over the rationals,
//! isolate its critical points with Sturm sequences, certify that it really
//! is Morse, order its critical values by exact interval refinement, and
//! return its Arnold snake.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::perm::{rank_permutation, Permutation};
use crate::poly::UniPoly;
use crate::{Poly, Rat};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorseFailure {
    #[error("a critical point is not real")]
    NonRealCriticalPoint,
    #[error("a critical point is repeated")]
    RepeatedCriticalPoint,
    #[error("two critical values coincide")]
    RepeatedCriticalValue,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("leading coefficient must be positive")]
    NonPositiveLeading,
    #[error("not a Morse polynomial: {0}")]
    NotMorse(MorseFailure),
}

/// Outcome of the Morse property check; failure is a value, not an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorseCheck {
    Pass,
    Fail(MorseFailure),
}

/// An isolating interval `(lo, hi]` around one real root of the
/// derivative, with the multiplicity of that root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: usize,
}

/// Everything the extraction certifies: degree, original leading
/// coefficient, isolating intervals for the critical points in increasing
/// order, and the snake of the critical values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseCertificate {
    pub degree: usize,
    pub leading_coefficient: Rat,
    pub critical_points: Vec<IsolatedRoot>,
    pub critical_value_order: Permutation,
}

/// Signed remainder sequence `p, p', -rem(...), ...` used for real root
/// counting.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if p.is_zero() || d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, rem) = seq[n - 2].div_rem(&seq[n - 1]).unwrap();
        if rem.is_zero() {
            return seq;
        }
        seq.push(-rem);
    }
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[Poly], x: &Rat) -> usize {
    variations(seq.iter().map(|p| sign_of(&p.eval(x))))
}

/// Sign variations at -infinity or +infinity, read off leading terms.
fn variations_at_infinity(seq: &[Poly], positive: bool) -> usize {
    variations(seq.iter().map(|p| match p.degree() {
        None => 0,
        Some(d) => {
            let lead = sign_of(p.leading_coeff().unwrap());
            if positive || d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    }))
}

/// Number of distinct real roots in the open interval `(lo, hi)`; the
/// endpoints must not be roots.
fn count_roots_between(seq: &[Poly], lo: &Rat, hi: &Rat) -> usize {
    variations_at(seq, lo) - variations_at(seq, hi)
}

fn count_real_roots(seq: &[Poly]) -> usize {
    variations_at_infinity(seq, false) - variations_at_infinity(seq, true)
}

/// Strict bound on the absolute value of every complex root.
fn root_bound(p: &Poly) -> Rat {
    let lead = p.leading_coeff().expect("nonzero polynomial").abs();
    let max_ratio = p
        .coeffs()
        .iter()
        .rev()
        .skip(1)
        .map(|c| c.abs() / lead.clone())
        .max()
        .unwrap_or_else(Rat::zero);
    Rat::one() + max_ratio
}

fn squarefree_part(p: &Poly) -> Poly {
    let g = UniPoly::gcd(p, &p.derivative());
    if g.degree() == Some(0) {
        return p.clone();
    }
    let (q, r) = p.div_rem(&g).unwrap();
    debug_assert!(r.is_zero());
    q
}

/// A point near `x` inside `(lo, hi)` where `p` does not vanish; walks a
/// shrinking offset, so it terminates because roots are finitely many.
fn nonvanishing_near(p: &Poly, x: &Rat, lo: &Rat, hi: &Rat) -> Rat {
    if !p.eval(x).is_zero() {
        return x.clone();
    }
    let mut offset = (hi - lo) / crate::rat_int(8);
    loop {
        let right = x + &offset;
        if &right < hi && !p.eval(&right).is_zero() {
            return right;
        }
        let left = x - &offset;
        if &left > lo && !p.eval(&left).is_zero() {
            return left;
        }
        offset /= crate::rat_int(2);
    }
}

/// Isolates the distinct real roots of a squarefree polynomial into open
/// intervals with non-root endpoints, sorted increasingly.
fn isolate_squarefree(sf: &Poly, seq: &[Poly]) -> Vec<(Rat, Rat)> {
    let bound = root_bound(sf);
    let total = count_real_roots(seq);
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(-bound.clone(), bound, total)];
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / crate::rat_int(2);
                let mid = nonvanishing_near(sf, &mid, &lo, &hi);
                let left = count_roots_between(seq, &lo, &mid);
                stack.push((lo, mid.clone(), left));
                stack.push((mid, hi, count - left));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Multiplicity of the single root of `deriv` inside the open interval:
/// the number of iterated gcds that still vanish there.
fn multiplicity_in(deriv: &Poly, lo: &Rat, hi: &Rat) -> usize {
    let mut mult = 0;
    let mut g = deriv.clone();
    while g.degree().unwrap_or(0) > 0 {
        let sf = squarefree_part(&g);
        let seq = sturm_sequence(&sf);
        if count_roots_between(&seq, lo, hi) == 0 {
            break;
        }
        mult += 1;
        g = UniPoly::gcd(&g, &g.derivative());
    }
    mult.max(1)
}

/// Isolates the real roots of the derivative of `p` into disjoint rational
/// intervals, one per distinct root, sorted increasingly.
pub fn isolate_critical_points(p: &Poly) -> Result<Vec<IsolatedRoot>, ExtractError> {
    if p.degree().unwrap_or(0) < 2 {
        return Err(ExtractError::DegreeTooSmall);
    }
    let deriv = p.derivative();
    let sf = squarefree_part(&deriv);
    let seq = sturm_sequence(&sf);
    Ok(isolate_squarefree(&sf, &seq)
        .into_iter()
        .map(|(lo, hi)| IsolatedRoot {
            multiplicity: multiplicity_in(&deriv, &lo, &hi),
            lo,
            hi,
        })
        .collect())
}

/// Resultant of two rational polynomials, by the Euclidean remainder
/// recurrence.
pub fn resultant(a: &Poly, b: &Poly) -> Rat {
    fn rec(a: &Poly, b: &Poly) -> Rat {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return Rat::zero();
        };
        if m == 0 {
            return pow_rat(&a.coeff(0), n);
        }
        if n == 0 {
            return pow_rat(&b.coeff(0), m);
        }
        let swap_sign = if (m * n) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        if m < n {
            return swap_sign * rec(b, a);
        }
        let (_, r) = a.div_rem(b).unwrap();
        let Some(dr) = r.degree() else {
            return Rat::zero();
        };
        swap_sign * pow_rat(b.leading_coeff().unwrap(), m - dr) * rec(b, &r)
    }
    fn pow_rat(base: &Rat, exp: usize) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc *= base;
        }
        acc
    }
    rec(a, b)
}

/// The critical-value polynomial `V(z) = res_y(p'(y), z - p(y))`, whose
/// roots are exactly the critical values of `p`; recovered by evaluating
/// the resultant at enough rational points and interpolating.
fn critical_value_resultant(p: &Poly) -> Poly {
    let deriv = p.derivative();
    let d = deriv.degree().expect("degree >= 2 checked by callers");
    let mut points = Vec::with_capacity(d + 1);
    for t in 0..=d {
        let z = crate::rat_int(t as i64);
        let shifted = &Poly::constant(z.clone()) - p;
        points.push((z, resultant(&deriv, &shifted)));
    }
    lagrange_interpolate(&points)
}

fn lagrange_interpolate(points: &[(Rat, Rat)]) -> Poly {
    let mut acc = Poly::zero();
    for (t, (xt, yt)) in points.iter().enumerate() {
        let mut basis = Poly::constant(yt.clone());
        for (s, (xs, _)) in points.iter().enumerate() {
            if s == t {
                continue;
            }
            let denom = xt - xs;
            let factor = Poly::from_coeffs(vec![-xs / &denom, Rat::one() / denom]);
            basis = &basis * &factor;
        }
        acc = &acc + &basis;
    }
    acc
}

/// Checks the Morse conditions on the critical points and values: all
/// critical points simple and real, all critical values distinct. The
/// distinctness of values is decided algebraically, through squarefreeness
/// of the critical-value resultant.
pub fn morse_check(p: &Poly) -> Result<MorseCheck, ExtractError> {
    let Some(degree) = p.degree() else {
        return Err(ExtractError::DegreeTooSmall);
    };
    if degree < 2 {
        return Err(ExtractError::DegreeTooSmall);
    }
    let deriv = p.derivative();
    if !deriv.is_squarefree() {
        return Ok(MorseCheck::Fail(MorseFailure::RepeatedCriticalPoint));
    }
    let seq = sturm_sequence(&deriv);
    if count_real_roots(&seq) != degree - 1 {
        return Ok(MorseCheck::Fail(MorseFailure::NonRealCriticalPoint));
    }
    if !critical_value_resultant(p).is_squarefree() {
        return Ok(MorseCheck::Fail(MorseFailure::RepeatedCriticalValue));
    }
    Ok(MorseCheck::Pass)
}

/// Interval Horner evaluation: encloses `p([lo, hi])` without any
/// monotonicity assumption.
fn eval_interval(p: &Poly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut acc_lo = Rat::zero();
    let mut acc_hi = Rat::zero();
    for c in p.coeffs().iter().rev() {
        let candidates = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let mut new_lo = candidates[0].clone();
        let mut new_hi = candidates[0].clone();
        for cand in &candidates[1..] {
            if cand < &new_lo {
                new_lo = cand.clone();
            }
            if cand > &new_hi {
                new_hi = cand.clone();
            }
        }
        acc_lo = new_lo + c;
        acc_hi = new_hi + c;
    }
    (acc_lo, acc_hi)
}

const REFINEMENT_GUARD: usize = 10_000;

/// Halves an isolating interval, keeping the root inside and the endpoints
/// off the root set.
fn refine_once(sf: &Poly, seq: &[Poly], interval: &mut (Rat, Rat)) {
    let (lo, hi) = interval.clone();
    let mid = (&lo + &hi) / crate::rat_int(2);
    let mid = nonvanishing_near(sf, &mid, &lo, &hi);
    if count_roots_between(seq, &lo, &mid) == 1 {
        *interval = (lo, mid);
    } else {
        *interval = (mid, hi);
    }
}

/// Extracts the Arnold snake of a Morse polynomial with positive leading
/// coefficient: ranks of the critical values taken left to right. Ranks
/// are scale-invariant, so a non-monic positive leading coefficient is
/// normalised away rather than rejected.
pub fn arnold_snake_of(p: &Poly) -> Result<MorseCertificate, ExtractError> {
    let Some(degree) = p.degree() else {
        return Err(ExtractError::DegreeTooSmall);
    };
    if degree < 2 {
        return Err(ExtractError::DegreeTooSmall);
    }
    let leading = p.leading_coeff().unwrap().clone();
    if !leading.is_positive() {
        return Err(ExtractError::NonPositiveLeading);
    }
    let monic = p.clone().into_monic();
    match morse_check(&monic)? {
        MorseCheck::Pass => {}
        MorseCheck::Fail(reason) => return Err(ExtractError::NotMorse(reason)),
    }

    let critical_points = isolate_critical_points(&monic)?;
    debug_assert_eq!(critical_points.len(), degree - 1);

    let deriv_sf = squarefree_part(&monic.derivative());
    let seq = sturm_sequence(&deriv_sf);
    let mut intervals: Vec<(Rat, Rat)> = critical_points
        .iter()
        .map(|r| (r.lo.clone(), r.hi.clone()))
        .collect();
    let mut value_boxes: Vec<(Rat, Rat)> = intervals
        .iter()
        .map(|(lo, hi)| eval_interval(&monic, lo, hi))
        .collect();

    // refine until all value enclosures are pairwise disjoint; guaranteed
    // to terminate because the resultant certified distinct values
    let mut steps = 0usize;
    loop {
        let mut overlapping = vec![false; intervals.len()];
        let mut any = false;
        for i in 0..value_boxes.len() {
            for j in i + 1..value_boxes.len() {
                let (alo, ahi) = &value_boxes[i];
                let (blo, bhi) = &value_boxes[j];
                if alo <= bhi && blo <= ahi {
                    overlapping[i] = true;
                    overlapping[j] = true;
                    any = true;
                }
            }
        }
        if !any {
            break;
        }
        steps += 1;
        assert!(
            steps < REFINEMENT_GUARD,
            "interval refinement failed to separate certified-distinct critical values"
        );
        for (i, flagged) in overlapping.iter().enumerate() {
            if *flagged {
                refine_once(&deriv_sf, &seq, &mut intervals[i]);
                value_boxes[i] = eval_interval(&monic, &intervals[i].0, &intervals[i].1);
            }
        }
    }

    let midpoints: Vec<Rat> = value_boxes
        .iter()
        .map(|(lo, hi)| (lo + hi) / crate::rat_int(2))
        .collect();
    let critical_value_order =
        rank_permutation(&midpoints).expect("disjoint enclosures have distinct midpoints");
    assert!(
        critical_value_order.is_snake(),
        "critical values of a Morse polynomial must alternate"
    );

    Ok(MorseCertificate {
        degree,
        leading_coefficient: leading,
        critical_points,
        critical_value_order,
    })
}

#[derive(Serialize, serde::Deserialize)]
struct CertJson {
    degree: usize,
    leading_coefficient: String,
    critical_points: Vec<PointJson>,
    critical_value_order: String,
}

#[derive(Serialize, serde::Deserialize)]
struct PointJson {
    lo: String,
    hi: String,
    multiplicity: usize,
}

impl MorseCertificate {
    pub fn to_json(&self) -> String {
        let json = CertJson {
            degree: self.degree,
            leading_coefficient: self.leading_coefficient.to_string(),
            critical_points: self
                .critical_points
                .iter()
                .map(|r| PointJson {
                    lo: r.lo.to_string(),
                    hi: r.hi.to_string(),
                    multiplicity: r.multiplicity,
                })
                .collect(),
            critical_value_order: self.critical_value_order.to_string(),
        };
        serde_json::to_string_pretty(&json).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let json: CertJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let parse_rat = |t: &str| t.parse::<Rat>().map_err(|e| format!("bad rational: {e}"));
        Ok(MorseCertificate {
            degree: json.degree,
            leading_coefficient: parse_rat(&json.leading_coefficient)?,
            critical_points: json
                .critical_points
                .iter()
                .map(|p| {
                    Ok(IsolatedRoot {
                        lo: parse_rat(&p.lo)?,
                        hi: parse_rat(&p.hi)?,
                        multiplicity: p.multiplicity,
                    })
                })
                .collect::<Result<_, String>>()?,
            critical_value_order: json
                .critical_value_order
                .parse()
                .map_err(|e| format!("{e}"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_univariate;
    use crate::{rat, rat_int};

    /// Antiderivative of 5(t-1)(t-2)(t-4)(t-7), the degree-5 example with
    /// critical points 1, 2, 4, 7.
    fn intro_poly() -> Poly {
        parse_univariate("y^5 - 35/2*y^4 + 105*y^3 - 265*y^2 + 280*y").unwrap()
    }

    fn contains(interval: &IsolatedRoot, v: i64) -> bool {
        let v = rat_int(v);
        interval.lo < v && v <= interval.hi
    }

    #[test]
    fn isolates_the_intro_critical_points() {
        let roots = isolate_critical_points(&intro_poly()).unwrap();
        assert_eq!(roots.len(), 4);
        for (r, expected) in roots.iter().zip([1, 2, 4, 7]) {
            assert!(contains(r, expected), "{r:?} should contain {expected}");
            assert_eq!(r.multiplicity, 1);
        }
        // intervals are pairwise disjoint as half-open intervals
        for pair in roots.windows(2) {
            assert!(pair[0].hi <= pair[1].lo);
        }
    }

    #[test]
    fn isolation_edge_cases() {
        let squared = parse_univariate("y^2").unwrap();
        let roots = isolate_critical_points(&squared).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(contains(&roots[0], 0));

        let no_real = parse_univariate("y^3 + 3*y").unwrap();
        assert!(isolate_critical_points(&no_real).unwrap().is_empty());

        let cubed = parse_univariate("y^3").unwrap();
        let roots = isolate_critical_points(&cubed).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);

        assert_eq!(
            isolate_critical_points(&parse_univariate("y").unwrap()),
            Err(ExtractError::DegreeTooSmall)
        );
    }

    #[test]
    fn sturm_counts_known_roots() {
        let p = parse_univariate("y^2 - 2").unwrap();
        let seq = sturm_sequence(&p);
        assert_eq!(count_real_roots(&seq), 2);
        assert_eq!(count_roots_between(&seq, &rat_int(0), &rat_int(2)), 1);
        assert_eq!(count_roots_between(&seq, &rat_int(-2), &rat_int(2)), 2);
    }

    #[test]
    fn resultant_matches_hand_computation() {
        let a = parse_univariate("y^2 - 1").unwrap();
        let b = parse_univariate("y - 2").unwrap();
        assert_eq!(resultant(&a, &b), rat_int(3));
        // common root forces a zero resultant
        let c = parse_univariate("y - 1").unwrap();
        assert_eq!(resultant(&a, &c), rat_int(0));
    }

    #[test]
    fn critical_value_resultant_of_depressed_cubic() {
        // p = y^3 - 3y has critical values -2 and 2 at y = 1 and y = -1,
        // so V(z) = 27(z^2 - 4)
        let p = parse_univariate("y^3 - 3*y").unwrap();
        let v = critical_value_resultant(&p);
        assert_eq!(v, parse_univariate("27*y^2 - 108").unwrap());
        assert!(v.is_squarefree());
    }

    #[test]
    fn morse_check_outcomes() {
        assert_eq!(morse_check(&intro_poly()), Ok(MorseCheck::Pass));
        assert_eq!(
            morse_check(&parse_univariate("y^3").unwrap()),
            Ok(MorseCheck::Fail(MorseFailure::RepeatedCriticalPoint))
        );
        // y^4 - 2y^2 takes the value -1 at both of y = +-1
        assert_eq!(
            morse_check(&parse_univariate("y^4 - 2*y^2").unwrap()),
            Ok(MorseCheck::Fail(MorseFailure::RepeatedCriticalValue))
        );
        assert_eq!(
            morse_check(&parse_univariate("y^3 + 3*y").unwrap()),
            Ok(MorseCheck::Fail(MorseFailure::NonRealCriticalPoint))
        );
        assert_eq!(
            morse_check(&parse_univariate("y").unwrap()),
            Err(ExtractError::DegreeTooSmall)
        );
    }

    #[test]
    fn intro_polynomial_snake() {
        let cert = arnold_snake_of(&intro_poly()).unwrap();
        assert_eq!(
            cert.critical_value_order,
            Permutation::new(vec![3, 2, 4, 1]).unwrap()
        );
        assert_eq!(cert.degree, 5);
        assert_eq!(cert.leading_coefficient, rat_int(1));
        assert!(cert.critical_value_order.is_snake());
    }

    #[test]
    fn snake_is_scale_invariant() {
        let p = intro_poly();
        let scaled = p.scaled(&rat(7, 3));
        let a = arnold_snake_of(&p).unwrap();
        let b = arnold_snake_of(&scaled).unwrap();
        assert_eq!(a.critical_value_order, b.critical_value_order);
        assert_eq!(b.leading_coefficient, rat(7, 3));
    }

    #[test]
    fn extraction_errors() {
        assert_eq!(
            arnold_snake_of(&parse_univariate("y^3").unwrap()),
            Err(ExtractError::NotMorse(MorseFailure::RepeatedCriticalPoint))
        );
        assert_eq!(
            arnold_snake_of(&-&intro_poly()),
            Err(ExtractError::NonPositiveLeading)
        );
        assert_eq!(
            arnold_snake_of(&parse_univariate("7").unwrap()),
            Err(ExtractError::DegreeTooSmall)
        );
    }

    #[test]
    fn certificate_round_trips_through_json() {
        let cert = arnold_snake_of(&intro_poly()).unwrap();
        let json = cert.to_json();
        assert_eq!(MorseCertificate::from_json(&json).unwrap(), cert);
    }

    #[test]
    fn interval_evaluation_encloses_true_values() {
        let p = intro_poly();
        let (lo, hi) = eval_interval(&p, &rat_int(1), &rat_int(2));
        for t in [rat_int(1), rat(3, 2), rat_int(2)] {
            let v = p.eval(&t);
            assert!(lo <= v && v <= hi);
        }
    }
}
