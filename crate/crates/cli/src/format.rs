/// Shortest `%.17g`-style rendering: 17 significant digits, trailing zeros
/// dropped, so the text parses back to the same f64.
pub fn g17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{v:.prec$}", prec = (16 - exp) as usize);
        trim(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
