use serde::Serialize;
use strato::montecarlo::{SimConfig, SimResult};
use strato::{ExpectResult, ItoCombination, Rational, Word};

use crate::OutputFormat;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn bracketed(word: &Word) -> String {
    format!("[{word}]")
}

/// Six significant digits, switching to exponent form outside 1e-5..1e6.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-5..6).contains(&exp) {
        format!("{:.*}", (5 - exp) as usize, x)
    } else {
        sci
    }
}

#[derive(Serialize)]
struct ExpectJson<'a> {
    word: &'a [u64],
    coeff: String,
    power: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

pub fn expect(
    word: &Word,
    result: &ExpectResult,
    t: Option<&Rational>,
    format: OutputFormat,
) -> String {
    let value = t.map(|t| result.monomial.eval(t));
    match format {
        OutputFormat::Text => {
            let mut out = result.monomial.to_string();
            if let (Some(t), Some(v)) = (t, &value) {
                out.push_str(&format!("\nat t = {t}: {v}"));
            }
            out
        }
        OutputFormat::Json => json(&ExpectJson {
            word: word.letters(),
            coeff: result.monomial.coeff().to_string(),
            power: result.monomial.power(),
            value: value.map(|v| v.to_string()),
        }),
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    word: &'a [u64],
    coeff: String,
}

#[derive(Serialize)]
struct DecomposeJson<'a> {
    word: &'a [u64],
    terms: Vec<TermJson<'a>>,
}

pub fn decompose(word: &Word, combination: &ItoCombination, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => combination.to_string(),
        OutputFormat::Json => json(&DecomposeJson {
            word: word.letters(),
            terms: combination
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.letters(),
                    coeff: c.to_string(),
                })
                .collect(),
        }),
    }
}

#[derive(Serialize)]
struct RowJson<'a> {
    word: &'a [u64],
    p_num: String,
    p_den: String,
    q: usize,
    coeff: String,
    power: usize,
}

#[derive(Serialize)]
struct TableJson<'a> {
    rows: Vec<RowJson<'a>>,
}

pub fn table(rows: &[(Word, ExpectResult)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::from("word\tp\tq\texpectation");
            for (w, e) in rows {
                let p = match e.halvings {
                    0 => "1".to_string(),
                    k => format!("1/2^{k}"),
                };
                out.push_str(&format!("\n{}\t{p}\t{}\t{}", bracketed(w), e.q, e.monomial));
            }
            out
        }
        OutputFormat::Json => json(&TableJson {
            rows: rows
                .iter()
                .map(|(w, e)| {
                    let p = e.p();
                    RowJson {
                        word: w.letters(),
                        p_num: p.numer().to_string(),
                        p_den: p.denom().to_string(),
                        q: e.q,
                        coeff: e.monomial.coeff().to_string(),
                        power: e.monomial.power(),
                    }
                })
                .collect(),
        }),
    }
}

#[derive(Serialize)]
struct ConfigJson<'a> {
    word: &'a [u64],
    t: f64,
    paths: u64,
    steps: usize,
    seed: u64,
}

#[derive(Serialize)]
struct SimulateJson<'a> {
    config: ConfigJson<'a>,
    mean: f64,
    std_error: f64,
    exact: Option<String>,
    z: Option<f64>,
}

// Thread count is deliberately absent: output must not depend on it.
pub fn simulate(cfg: &SimConfig, result: &SimResult, format: OutputFormat) -> String {
    let exact = result.exact.as_ref().map(|e| e.to_string());
    let z = result.z_score();
    match format {
        OutputFormat::Text => {
            let mut lines = vec![
                format!("word       {}", bracketed(&cfg.word)),
                format!("t          {}", cfg.horizon),
                format!("paths      {}", cfg.paths),
                format!("steps      {}", cfg.steps),
                format!("seed       {}", cfg.seed),
                format!("mean       {}", sig6(result.mean)),
                format!("std_error  {}", sig6(result.std_error)),
                format!("exact      {}", exact.as_deref().unwrap_or("n/a")),
            ];
            if let Some(z) = z {
                lines.push(format!("z          {}", sig6(z)));
            }
            lines.join("\n")
        }
        OutputFormat::Json => json(&SimulateJson {
            config: ConfigJson {
                word: cfg.word.letters(),
                t: cfg.horizon,
                paths: cfg.paths,
                steps: cfg.steps,
                seed: cfg.seed,
            },
            mean: result.mean,
            std_error: result.std_error,
            exact,
            z,
        }),
    }
}
