use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_rational::BigRational;
use serde_json::Value;

use solenoidal::dilation::{parse_rational, rational_to_f64, Digit, DigitWord, DilationSpec, TorusPoint};
use solenoidal::filters::{builtin, LaurentFilter, BUILTIN_NAMES};
use solenoidal::laurent::{GaussRat, LaurentPoly};
use solenoidal::tau::TrigTestFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Precision {
    Exact,
    Float,
}

/// A built-in name or a path to a filter JSON file.
pub fn load_filter(source: &str, qmf_constant: Option<u64>) -> Result<LaurentFilter> {
    let filter = match builtin(source) {
        Some(f) => f,
        None => {
            let path = Path::new(source);
            if !path.is_file() {
                bail!(
                    "unknown filter `{source}`: not a built-in ({}) and no such file",
                    BUILTIN_NAMES.join(", ")
                );
            }
            let text = read(path)?;
            LaurentFilter::from_json(&text).map_err(|e| match e {
                solenoidal::Error::Json(j) => anyhow!("malformed JSON in {source}: {j}"),
                other => anyhow!("invalid filter file {source}: {other}"),
            })?
        }
    };
    Ok(match qmf_constant {
        Some(c) => filter.with_qmf_constant(c),
        None => filter,
    })
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn parse_spec(diag: &str) -> Result<DilationSpec> {
    let diag = diag
        .split(',')
        .map(|s| s.trim().parse::<u32>().with_context(|| format!("bad dilation entry `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(DilationSpec::new(diag)?)
}

/// Comma-separated coordinates.
pub fn parse_point(spec: &DilationSpec, s: &str, precision: Precision) -> Result<TorusPoint> {
    let xs = parse_reals(spec, s)?;
    Ok(match precision {
        Precision::Exact => TorusPoint::exact(xs.iter().map(solenoidal::dilation::frac).collect()),
        Precision::Float => TorusPoint::float(xs.iter().map(|x| rational_to_f64(&solenoidal::dilation::frac(x))).collect()),
    })
}

/// Comma-separated reals, not reduced mod 1.
pub fn parse_reals(spec: &DilationSpec, s: &str) -> Result<Vec<BigRational>> {
    let xs = s
        .split(',')
        .map(|x| parse_rational(x).map_err(|e| anyhow!("{e}")))
        .collect::<Result<Vec<_>>>()?;
    spec.check_dim(xs.len())?;
    Ok(xs)
}

/// Digits separated by `,` when `d = 1`; otherwise digits separated by `;`
/// with coordinates separated by `,`. The empty string is the empty word.
pub fn parse_digits(spec: &DilationSpec, s: &str) -> Result<Vec<Digit>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parse_u32 = |x: &str| x.trim().parse::<u32>().with_context(|| format!("bad digit `{x}`"));
    let digits: Vec<Digit> = if spec.dim() == 1 {
        s.split(',').map(|x| Ok(Digit(vec![parse_u32(x)?]))).collect::<Result<_>>()?
    } else {
        s.split(';')
            .map(|d| Ok(Digit(d.split(',').map(parse_u32).collect::<Result<_>>()?)))
            .collect::<Result<_>>()?
    };
    for d in &digits {
        spec.check_dim(d.0.len())?;
        spec.check_digit(d)?;
    }
    Ok(digits)
}

pub fn parse_word(spec: &DilationSpec, prefix: &str, period: Option<&str>) -> Result<DigitWord> {
    let period = period.map(|p| parse_digits(spec, p)).transpose()?;
    Ok(DigitWord::new(spec, parse_digits(spec, prefix)?, period)?)
}

/// A trigonometric polynomial as a JSON list of
/// `{"exp": [..], "re": "p/q", "im": "p/q"}`, inline or in a file.
pub fn parse_trig(spec: &DilationSpec, arg: &str) -> Result<TrigTestFunction> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        (arg.to_owned(), "--f".to_owned())
    } else {
        (read(Path::new(arg))?, arg.to_owned())
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| anyhow!("malformed JSON in {origin}: {e}"))?;
    let items = match value {
        Value::Array(items) => items,
        single @ Value::Object(_) => vec![single],
        _ => bail!("{origin}: expected a list of terms"),
    };
    let number = |v: Option<&Value>| -> Result<BigRational> {
        match v {
            None => Ok(BigRational::from_integer(0.into())),
            Some(Value::String(s)) => Ok(parse_rational(s)?),
            Some(Value::Number(n)) => Ok(parse_rational(&n.to_string())?),
            Some(other) => bail!("{origin}: coefficient {other} is not a number"),
        }
    };
    let terms = items
        .iter()
        .map(|item| {
            let exp: Vec<i64> = serde_json::from_value(item.get("exp").cloned().unwrap_or(Value::Null))
                .map_err(|e| anyhow!("{origin}: bad exponent: {e}"))?;
            spec.check_dim(exp.len())?;
            Ok((exp, GaussRat::new(number(item.get("re"))?, number(item.get("im"))?)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(spec.dim(), terms)?)
}
