//! Presentation helpers: decimal rendering of exact rationals and the
//! inline tree notation used in text reports.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use snakeforge_core::{Rat, Sign, SignedTree};

/// Renders an exact rational in decimal positional notation, rounded to
/// `sig_digits` significant digits. This is the only non-exact output in
/// the tool and it is presentation-only.
pub fn rat_to_decimal(r: &Rat, sig_digits: usize) -> String {
    let sig_digits = sig_digits.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let negative = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().clone();

    // decimal exponent of the first significant digit
    let mut exponent: i64 = 0;
    let ten = BigInt::from(10);
    let mut scaled_num = a.clone();
    let mut scaled_den = b.clone();
    while scaled_num >= scaled_den {
        scaled_den *= &ten;
        exponent += 1;
    }
    while &scaled_num * &ten < scaled_den {
        scaled_num *= &ten;
        exponent -= 1;
    }
    // now scaled_num / scaled_den is in [1/10, 1); the first significant
    // digit sits at 10^(exponent - 1)

    // digits = round(a * 10^(sig - exponent) / b)
    let shift = sig_digits as i64 - exponent;
    let (num, den) = if shift >= 0 {
        (a * ten.pow(shift as u32), b)
    } else {
        (a, b * ten.pow((-shift) as u32))
    };
    let mut digits = (&num + (&den / 2u8)) / &den;
    if digits == ten.pow(sig_digits as u32) {
        // rounding bumped into the next decade
        digits /= &ten;
        exponent += 1;
    }

    let digit_str = digits.to_string();
    debug_assert_eq!(digit_str.len(), sig_digits);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent <= 0 {
        out.push_str("0.");
        for _ in 0..(-exponent) {
            out.push('0');
        }
        out.push_str(digit_str.trim_end_matches('0'));
        if out.ends_with('.') {
            out.push('0');
        }
    } else if (exponent as usize) >= sig_digits {
        out.push_str(&digit_str);
        for _ in 0..(exponent as usize - sig_digits) {
            out.push('0');
        }
    } else {
        let (int_part, frac_part) = digit_str.split_at(exponent as usize);
        out.push_str(int_part);
        let frac = frac_part.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    out
}

/// Compact one-line notation for a separating tree, e.g.
/// `((4 + 5) - (1 + (3 - 2)))`.
pub fn tree_inline(t: &SignedTree) -> String {
    match t {
        SignedTree::Leaf { leaf } => leaf.to_string(),
        SignedTree::Node { sign, left, right } => {
            let op = match sign {
                Sign::Plus => '+',
                Sign::Minus => '-',
            };
            format!("({} {} {})", tree_inline(left), op, tree_inline(right))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use snakeforge_core::rat;

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(rat_to_decimal(&rat(-441, 10), 12), "-44.1");
        assert_eq!(rat_to_decimal(&rat(1, 16), 6), "0.0625");
        assert_eq!(rat_to_decimal(&rat(0, 1), 12), "0");
        assert_eq!(rat_to_decimal(&rat(207, 2), 12), "103.5");
        assert_eq!(rat_to_decimal(&rat(2, 3), 2), "0.67");
        assert_eq!(rat_to_decimal(&rat(999, 1), 2), "1000");
        assert_eq!(rat_to_decimal(&rat(12345, 1), 3), "12300");
        assert_eq!(rat_to_decimal(&rat(1, 200), 3), "0.005");
    }
}
