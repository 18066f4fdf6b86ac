//! Number formatting: 17 significant digits for machine output (exact
//! round trip of `f64`), 12 for people.

/// Scientific notation with 17 significant digits.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x` with `digits` significant digits, plain decimal where reasonable.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - magnitude;
    if (-4..=15).contains(&magnitude) && decimals >= 0 {
        format!("{x:.*}", decimals as usize)
    } else {
        format!("{x:.*e}", digits.saturating_sub(1))
    }
}

pub fn human(x: f64) -> String {
    significant(x, 12)
}
