/// `%.12g`: 12 significant digits, trailing zeros trimmed, exponent form outside [1e-5, 1e12).
pub fn fmt(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{}", v);
    }
    let sci = format!("{:.11e}", v);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, v))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mant), sign, exp.abs())
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Decimal or `p/q`.
pub fn parse(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad number `{}`", s))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad number `{}`", s))?;
            p / q
        }
        None => s.parse().map_err(|_| format!("bad number `{}`", s))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("bad number `{}`", s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt(2.0 / 9.0), "0.222222222222");
        assert_eq!(fmt(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt(1.0), "1");
        assert_eq!(fmt(0.5), "0.5");
        assert_eq!(fmt(-0.25), "-0.25");
        assert_eq!(fmt(7.000000000000001), "7");
        assert_eq!(fmt(1e-7), "1e-07");
        assert_eq!(fmt(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt(0.0001), "0.0001");
    }

    #[test]
    fn fractions() {
        assert_eq!(parse("1/6").unwrap(), 1.0 / 6.0);
        assert_eq!(parse("0.5").unwrap(), 0.5);
        assert!(parse("x").is_err());
        assert!(parse("1/0").is_err());
    }
}
