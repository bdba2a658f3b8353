//! Number formatting for text reports: 12 significant digits, `%g` style,
//! with values below `1e-13` in magnitude printed as `0` so rounding noise
//! does not show up in golden files.

pub const SIGNIFICANT: usize = 12;
const SNAP: f64 = 1e-13;

pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < SNAP {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" { "0".into() } else { s }
    } else {
        let s = format!("{:.*e}", SIGNIFICANT - 1, x);
        let (mant, e) = s.split_once('e').expect("scientific format");
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{e}")
    }
}

pub fn list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| num(x)).collect();
    format!("[{}]", parts.join(", "))
}
