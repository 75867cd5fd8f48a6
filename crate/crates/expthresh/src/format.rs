//! Canonical JSON text formats for the toolkit's objects.
//!
//! Renderers emit one fixed form per object — keys in alphabetical
//! order, members and weights in canonical subset order — so equal
//! objects serialize identically. Parsers accept exactly the documented
//! shapes and report what was wrong otherwise; numeric values travel as
//! exact rational strings like `"3/4"`, never as floats.
//!
//! Shapes:
//!
//! ```text
//! family             {"generators": [["a","b"], ["a","c"]], "ground": ["a","b","c"]}
//! cover              {"ground": ["a","b"], "members": [[], ["a"]]}
//! fractional cover   {"ground": ["a"], "weights": [{"subset": ["a"], "weight": "1/2"}]}
//! enclosure          {"hi": "3/8", "lo": "1/4"}
//! permutation group  {"generators": [[1, 0, 2]], "n": 3}
//! rational           3/4  or  -2
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::cover::Cover;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::{GroundSet, Mask, MAX_GROUND};
use crate::lp::FractionalCover;
use crate::symmetry::PermutationGroup;

/// Largest exponent accepted in the `2^-k` width shorthand.
const MAX_WIDTH_EXPONENT: u32 = 1024;

fn parse_error(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

/// Parses an exact rational written as `num` or `num/den` in base ten.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return Err(parse_error("empty rational"));
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = BigInt::from_str(num_text.trim())
        .map_err(|_| parse_error(format!("bad integer {:?}", num_text.trim())))?;
    let den = match den_text {
        Some(d) => BigInt::from_str(d.trim())
            .map_err(|_| parse_error(format!("bad integer {:?}", d.trim())))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(parse_error("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational in lowest terms, omitting a unit denominator.
pub fn render_rational(value: &BigRational) -> String {
    value.to_string()
}

/// Parses a bisection width: either the shorthand `2^-k` or a positive
/// rational in `num/den` form.
pub fn parse_width(text: &str) -> Result<BigRational> {
    let trimmed = text.trim();
    let width = if let Some(exponent) = trimmed.strip_prefix("2^-") {
        let k: u32 = exponent
            .parse()
            .map_err(|_| parse_error(format!("bad width exponent {exponent:?}")))?;
        if k == 0 || k > MAX_WIDTH_EXPONENT {
            return Err(Error::OutOfRange {
                name: "width exponent",
                value: exponent.into(),
                range: "[1, 1024]",
            });
        }
        BigRational::new(BigInt::one(), BigInt::one() << k)
    } else {
        parse_rational(trimmed)?
    };
    if !width.is_positive() {
        return Err(Error::OutOfRange {
            name: "width",
            value: render_rational(&width),
            range: "(0, inf)",
        });
    }
    Ok(width)
}

/// Decimal approximation carrying `sig` significant digits (truncated,
/// not rounded). Display only; nothing downstream may consume it.
pub fn approx_sig(value: &BigRational, sig: usize) -> String {
    if value.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    // Exact floor of log10(|value|): digit-count difference gives a
    // two-candidate window, settled by one comparison.
    let num_digits = value.numer().abs().to_string().len() as i64;
    let den_digits = value.denom().to_string().len() as i64;
    let d = num_digits - den_digits;
    let exponent = if magnitude_at_least_ten_to(value, d) {
        d
    } else {
        d - 1
    };
    let places = (sig as i64 - 1 - exponent).max(0) as usize;
    approx_decimal(value, places)
}

/// True when `|value| >= 10^d`.
fn magnitude_at_least_ten_to(value: &BigRational, d: i64) -> bool {
    let num = value.numer().abs();
    let den = value.denom().clone();
    if d >= 0 {
        num >= den * BigInt::from(10).pow(d as u32)
    } else {
        num * BigInt::from(10).pow((-d) as u32) >= den
    }
}

/// Decimal approximation of a rational, truncated toward zero after
/// `digits` fractional places. Display only; nothing downstream may
/// consume it.
pub fn approx_decimal(value: &BigRational, digits: usize) -> String {
    let digits = digits.min(50);
    let magnitude = value.abs();
    let whole = magnitude.to_integer();
    let mut remainder = magnitude.fract();
    let mut out = String::new();
    if value.is_negative() && (!whole.is_zero() || !remainder.is_zero()) {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            remainder *= BigRational::from_integer(ten.clone());
            let digit = remainder.to_integer();
            out.push_str(&digit.to_string());
            remainder = remainder.fract();
        }
    }
    out
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_error(format!("invalid JSON: {e}")))
}

/// The object's fields, requiring exactly the named keys.
fn fields<'v>(value: &'v Value, keys: &[&str], what: &str) -> Result<&'v Map<String, Value>> {
    let map = value
        .as_object()
        .ok_or_else(|| parse_error(format!("{what} must be a JSON object")))?;
    for key in keys {
        if !map.contains_key(*key) {
            return Err(parse_error(format!("{what} is missing {key:?}")));
        }
    }
    if let Some(extra) = map.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(parse_error(format!("{what} has unexpected key {extra:?}")));
    }
    Ok(map)
}

fn string_array<'v>(value: &'v Value, what: &str) -> Result<Vec<&'v str>> {
    value
        .as_array()
        .ok_or_else(|| parse_error(format!("{what} must be an array")))?
        .iter()
        .map(|item| {
            item.as_str()
                .ok_or_else(|| parse_error(format!("{what} must contain only strings")))
        })
        .collect()
}

fn ground_from(value: &Value) -> Result<GroundSet> {
    GroundSet::new(string_array(value, "\"ground\"")?)
}

fn subset_from(value: &Value, ground: &GroundSet, what: &str) -> Result<Mask> {
    ground.mask_from_labels(&string_array(value, what)?)
}

fn rational_field(value: &Value, what: &str) -> Result<BigRational> {
    parse_rational(
        value
            .as_str()
            .ok_or_else(|| parse_error(format!("{what} must be a rational string")))?,
    )
}

fn labels_value(ground: &GroundSet, mask: Mask) -> Value {
    Value::from(ground.labels_of(mask))
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}

/// Parses a family: its ground set and the generating subsets.
pub fn parse_family(text: &str) -> Result<Family> {
    let root = parse_json(text)?;
    let map = fields(&root, &["generators", "ground"], "family")?;
    let ground = ground_from(&map["ground"])?;
    let generators = map["generators"]
        .as_array()
        .ok_or_else(|| parse_error("\"generators\" must be an array"))?
        .iter()
        .map(|g| subset_from(g, &ground, "generator"))
        .collect::<Result<Vec<Mask>>>()?;
    Family::new(ground, generators)
}

/// A family's canonical JSON value: generators in canonical subset
/// order.
pub fn family_to_value(family: &Family) -> Value {
    let ground = family.ground();
    json!({
        "generators": family
            .generators()
            .iter()
            .map(|&g| labels_value(ground, g))
            .collect::<Vec<Value>>(),
        "ground": ground.labels(),
    })
}

/// Renders a family canonically as pretty JSON text.
pub fn render_family(family: &Family) -> String {
    pretty(&family_to_value(family))
}

/// Parses a cover together with the ground set its labels refer to.
pub fn parse_cover(text: &str) -> Result<(GroundSet, Cover)> {
    let root = parse_json(text)?;
    let map = fields(&root, &["ground", "members"], "cover")?;
    let ground = ground_from(&map["ground"])?;
    let members = map["members"]
        .as_array()
        .ok_or_else(|| parse_error("\"members\" must be an array"))?
        .iter()
        .map(|m| subset_from(m, &ground, "member"))
        .collect::<Result<Vec<Mask>>>()?;
    Ok((ground, Cover::new(members)))
}

/// A cover's canonical JSON value over its ground set.
pub fn cover_to_value(ground: &GroundSet, cover: &Cover) -> Value {
    json!({
        "ground": ground.labels(),
        "members": cover
            .members()
            .iter()
            .map(|&m| labels_value(ground, m))
            .collect::<Vec<Value>>(),
    })
}

/// Renders a cover canonically as pretty JSON text.
pub fn render_cover(ground: &GroundSet, cover: &Cover) -> String {
    pretty(&cover_to_value(ground, cover))
}

/// Parses a subset weighting together with its ground set.
pub fn parse_fractional_cover(text: &str) -> Result<(GroundSet, FractionalCover)> {
    let root = parse_json(text)?;
    let map = fields(&root, &["ground", "weights"], "weighting")?;
    let ground = ground_from(&map["ground"])?;
    let weights = map["weights"]
        .as_array()
        .ok_or_else(|| parse_error("\"weights\" must be an array"))?
        .iter()
        .map(|entry| {
            let entry = fields(entry, &["subset", "weight"], "weight entry")?;
            Ok((
                subset_from(&entry["subset"], &ground, "\"subset\"")?,
                rational_field(&entry["weight"], "\"weight\"")?,
            ))
        })
        .collect::<Result<Vec<(Mask, BigRational)>>>()?;
    Ok((ground, FractionalCover::new(weights)?))
}

/// A weighting's canonical JSON value; zero weights never appear.
pub fn fractional_cover_to_value(ground: &GroundSet, weighting: &FractionalCover) -> Value {
    json!({
        "ground": ground.labels(),
        "weights": weighting
            .weights()
            .iter()
            .map(|(mask, w)| {
                json!({
                    "subset": labels_value(ground, *mask),
                    "weight": render_rational(w),
                })
            })
            .collect::<Vec<Value>>(),
    })
}

/// Renders a weighting canonically as pretty JSON text.
pub fn render_fractional_cover(ground: &GroundSet, weighting: &FractionalCover) -> String {
    pretty(&fractional_cover_to_value(ground, weighting))
}

/// Parses an enclosure; endpoints must be ordered.
pub fn parse_enclosure(text: &str) -> Result<Enclosure> {
    let root = parse_json(text)?;
    let map = fields(&root, &["hi", "lo"], "enclosure")?;
    let lo = rational_field(&map["lo"], "\"lo\"")?;
    let hi = rational_field(&map["hi"], "\"hi\"")?;
    if lo > hi {
        return Err(parse_error("enclosure endpoints out of order"));
    }
    Ok(Enclosure::new(lo, hi))
}

/// An enclosure's exact endpoints as a JSON value.
pub fn enclosure_to_value(enclosure: &Enclosure) -> Value {
    json!({
        "hi": render_rational(enclosure.hi()),
        "lo": render_rational(enclosure.lo()),
    })
}

/// Renders an enclosure's exact endpoints as pretty JSON text.
pub fn render_enclosure(enclosure: &Enclosure) -> String {
    pretty(&enclosure_to_value(enclosure))
}

/// Parses a permutation group given by generators in one-line notation
/// (the image of each index in order), closing them under composition.
pub fn parse_group(text: &str) -> Result<PermutationGroup> {
    let root = parse_json(text)?;
    let map = fields(&root, &["generators", "n"], "group")?;
    let n = map["n"]
        .as_u64()
        .ok_or_else(|| parse_error("\"n\" must be a nonnegative integer"))? as usize;
    if n == 0 || n > MAX_GROUND {
        return Err(Error::OutOfRange {
            name: "n",
            value: n.to_string(),
            range: "[1, 128]",
        });
    }
    let generators = map["generators"]
        .as_array()
        .ok_or_else(|| parse_error("\"generators\" must be an array"))?
        .iter()
        .map(|perm| {
            perm.as_array()
                .ok_or_else(|| parse_error("permutation must be an array"))?
                .iter()
                .map(|image| {
                    image
                        .as_u64()
                        .map(|v| v as usize)
                        .ok_or_else(|| parse_error("permutation entries must be indices"))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    PermutationGroup::generate(n, &generators)
}

/// Renders a group by listing every element, a generator set that
/// parses back to the same group.
pub fn render_group(group: &PermutationGroup) -> String {
    pretty(&json!({
        "generators": group.elements(),
        "n": group.n(),
    }))
}
