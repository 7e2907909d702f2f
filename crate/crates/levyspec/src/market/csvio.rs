//! Quote-file ingestion. Columns: `type` (C|P), `strike`, `price`, optional
//! `bid`/`ask`, `maturity_years`, `spot`, optional `rate`. Prices are in
//! currency units; everything is normalised by the spot internally. When the
//! rate column is absent it is recovered from put-call parity across strikes.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::market::QuoteSet;

#[derive(Debug, Clone, Copy)]
struct Row {
    line: usize,
    is_call: bool,
    strike: f64,
    price: f64,
    bid: Option<f64>,
    ask: Option<f64>,
    maturity: f64,
    spot: f64,
    rate: Option<f64>,
}

/// Least-squares rate from put-call parity `C - P = S0 - K e^{-rT}` over
/// matched strike pairs. Linear in `z = e^{-rT}`:
/// `z* = sum K (S0 - (C - P)) / sum K^2`.
pub fn infer_rate(pairs: &[(f64, f64, f64)], s0: f64, t: f64) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Data(
            "rate missing and no matched call/put pairs for parity".into(),
        ));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for &(k, c, p) in pairs {
        num += k * (s0 - (c - p));
        den += k * k;
    }
    let z = num / den;
    if z <= 0.0 {
        return Err(Error::Data(format!(
            "parity regression produced non-positive discount factor {z}"
        )));
    }
    Ok(-(z.ln()) / t)
}

pub fn load_quotes(path: &Path) -> Result<QuoteSet> {
    let file = std::fs::File::open(path)?;
    load_quotes_from_reader(file)
}

pub fn load_quotes_from_reader(reader: impl Read) -> Result<QuoteSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (c_type, c_strike, c_price, c_mat, c_spot) = match (
        col("type"),
        col("strike"),
        col("price"),
        col("maturity_years"),
        col("spot"),
    ) {
        (Some(a), Some(b), Some(c), Some(d), Some(e)) => (a, b, c, d, e),
        _ => {
            return Err(Error::Data(
                "quote file must have columns: type, strike, price, maturity_years, spot".into(),
            ))
        }
    };
    let c_bid = col("bid");
    let c_ask = col("ask");
    let c_rate = col("rate");

    let mut rows = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let line = idx + 2; // header is line 1
        let record = record?;
        let get = |c: usize| -> Result<&str> {
            record
                .get(c)
                .ok_or_else(|| Error::QuoteRow {
                    row: line,
                    msg: "missing field".into(),
                })
        };
        let parse = |c: usize, name: &str| -> Result<f64> {
            let s = get(c)?;
            s.parse::<f64>().map_err(|_| Error::QuoteRow {
                row: line,
                msg: format!("cannot parse {name} from {s:?}"),
            })
        };
        let opt = |c: Option<usize>| -> Result<Option<f64>> {
            match c {
                Some(c) => match record.get(c) {
                    Some("") | None => Ok(None),
                    Some(s) => s.parse::<f64>().map(Some).map_err(|_| Error::QuoteRow {
                        row: line,
                        msg: format!("cannot parse optional field from {s:?}"),
                    }),
                },
                None => Ok(None),
            }
        };
        let ty = get(c_type)?;
        let is_call = match ty {
            "C" | "c" | "call" | "CALL" => true,
            "P" | "p" | "put" | "PUT" => false,
            other => {
                return Err(Error::QuoteRow {
                    row: line,
                    msg: format!("option type must be C or P, got {other:?}"),
                })
            }
        };
        let row = Row {
            line,
            is_call,
            strike: parse(c_strike, "strike")?,
            price: parse(c_price, "price")?,
            bid: opt(c_bid)?,
            ask: opt(c_ask)?,
            maturity: parse(c_mat, "maturity_years")?,
            spot: parse(c_spot, "spot")?,
            rate: opt(c_rate)?,
        };
        if row.price <= 0.0 {
            return Err(Error::QuoteRow {
                row: line,
                msg: format!("price must be positive, got {}", row.price),
            });
        }
        if row.strike <= 0.0 || row.spot <= 0.0 {
            return Err(Error::QuoteRow {
                row: line,
                msg: "strike and spot must be positive".into(),
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Data("quote file has no data rows".into()));
    }
    let t = rows[0].maturity;
    let s0 = rows[0].spot;
    for r in &rows {
        if (r.maturity - t).abs() > 1e-12 {
            return Err(Error::QuoteRow {
                row: r.line,
                msg: format!("unmatched maturity {} (file uses {t})", r.maturity),
            });
        }
        if (r.spot - s0).abs() > 1e-9 * s0 {
            return Err(Error::QuoteRow {
                row: r.line,
                msg: "spot differs across rows".into(),
            });
        }
    }

    // group by strike: calls and puts meet here for parity and OTM selection
    #[derive(Default, Clone, Copy)]
    struct AtStrike {
        call: Option<(usize, f64, Option<f64>, Option<f64>)>,
        put: Option<(usize, f64, Option<f64>, Option<f64>)>,
    }
    let mut by_strike: BTreeMap<u64, (f64, AtStrike)> = BTreeMap::new();
    for r in &rows {
        let key = r.strike.to_bits();
        let entry = by_strike.entry(key).or_insert((r.strike, AtStrike::default()));
        let slot = if r.is_call {
            &mut entry.1.call
        } else {
            &mut entry.1.put
        };
        if slot.is_some() {
            return Err(Error::QuoteRow {
                row: r.line,
                msg: format!("duplicate {} quote at strike {}", if r.is_call { "call" } else { "put" }, r.strike),
            });
        }
        *slot = Some((r.line, r.price, r.bid, r.ask));
    }

    // rate: explicit column wins, parity regression otherwise
    let explicit: Vec<f64> = rows.iter().filter_map(|r| r.rate).collect();
    let r = if explicit.is_empty() {
        let pairs: Vec<(f64, f64, f64)> = by_strike
            .values()
            .filter_map(|(k, s)| match (s.call, s.put) {
                (Some((_, c, _, _)), Some((_, p, _, _))) => Some((*k, c, p)),
                _ => None,
            })
            .collect();
        infer_rate(&pairs, s0, t)?
    } else {
        let r0 = explicit[0];
        if explicit.iter().any(|r| (r - r0).abs() > 1e-12) {
            return Err(Error::Data("rate column differs across rows".into()));
        }
        r0
    };

    let mut x = Vec::new();
    let mut o = Vec::new();
    let mut delta = Vec::new();
    let disc = (-r * t).exp();
    for (k, at) in by_strike.values() {
        let xk = (k / s0).ln() - r * t;
        // prefer the out-of-the-money side; convert through parity otherwise
        let (price, bid, ask) = if xk >= 0.0 {
            match (at.call, at.put) {
                (Some((_, c, b, a)), _) => (c, b, a),
                (None, Some((_, p, b, a))) => (p + s0 - k * disc, b, a),
                (None, None) => unreachable!(),
            }
        } else {
            match (at.put, at.call) {
                (Some((_, p, b, a)), _) => (p, b, a),
                (None, Some((_, c, b, a))) => (c - s0 + k * disc, b, a),
                (None, None) => unreachable!(),
            }
        };
        let rel = price / s0;
        let d = match (bid, ask) {
            // documented convention: half the spread, spot-normalised
            (Some(b), Some(a)) if a >= b => (a - b) / (2.0 * s0),
            _ => 0.01 * rel,
        };
        x.push(xk);
        o.push(rel);
        delta.push(d);
    }
    QuoteSet::new(x, o, delta, t, r, s0)
}
