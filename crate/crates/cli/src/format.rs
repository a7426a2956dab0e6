use cac_core::BigRational;

/// `v` with 15 significant digits, positional unless tiny or huge.
pub fn sig15(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-4..=20).contains(&magnitude) {
        return format!("{v:.14e}");
    }
    let decimals = (14 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn exact_opt(r: Option<BigRational>) -> String {
    r.map_or_else(|| "undefined".to_string(), |r| r.to_string())
}
