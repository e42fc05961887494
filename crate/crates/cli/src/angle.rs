//! Angle literals: `pi/3`-style fractions, degrees with a `deg` suffix, or
//! plain radians.

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(deg) = t.strip_suffix("deg") {
        let v: f64 = deg
            .trim()
            .parse()
            .map_err(|_| format!("bad degree literal: {s:?}"))?;
        return Ok(v.to_radians());
    }
    if let Some(idx) = t.find("pi") {
        let (coef_str, rest) = (&t[..idx], &t[idx + 2..]);
        let coef: f64 = if coef_str.is_empty() {
            1.0
        } else {
            coef_str
                .trim_end_matches('*')
                .parse()
                .map_err(|_| format!("bad coefficient in angle literal: {s:?}"))?
        };
        let denom: f64 = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            d.parse()
                .map_err(|_| format!("bad denominator in angle literal: {s:?}"))?
        } else {
            return Err(format!("bad angle literal: {s:?}"));
        };
        if denom == 0.0 {
            return Err(format!("zero denominator in angle literal: {s:?}"));
        }
        return Ok(coef * PI / denom);
    }
    t.parse()
        .map_err(|_| format!("bad angle literal: {s:?} (use radians, `deg`, or `pi/k`)"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_forms() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/3").unwrap(), PI / 3.0);
        assert_eq!(parse_angle("2pi/5").unwrap(), 2.0 * PI / 5.0);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("60deg").unwrap(), PI / 3.0);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
    }
}
