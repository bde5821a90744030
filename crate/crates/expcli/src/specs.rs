//! State and marked-set mini-languages used on the command line.
//!
//! States: `eta:N`, `ghz:N`, `genghz:N:A0SQ`, `w:N`, `balanced:N`,
//! `etaghzmix:N:A_GHZ`, `evenodd:N:A_EVEN`, `random:N:seed=S[:sigma=X]`,
//! `basis:N:INDEX`, `file:PATH`.
//!
//! Marked sets: comma-separated indices and inclusive ranges (`0,5,8-11`), or
//! `w` for the weight-one indices `{1, 2, 4, …, 2^{n-1}}`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use groverian_core::zoo::{self, RandomStateSpec};
use groverian_core::{Complex64, MarkedSet, RegisterState};

fn parse_num<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.trim()
        .parse()
        .map_err(|_| anyhow!("invalid {what} {tok:?}"))
}

pub fn parse_state(spec: &str) -> Result<RegisterState> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("file:") {
        return RegisterState::read_file(Path::new(path))
            .with_context(|| format!("reading state file {path}"));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let kind = parts[0];
    let n: usize = match parts.get(1) {
        Some(tok) => parse_num(tok, "qubit count")?,
        None => bail!("state spec {spec:?} is missing the qubit count"),
    };
    let arg = |i: usize, what: &str| -> Result<&str> {
        parts
            .get(i)
            .copied()
            .ok_or_else(|| anyhow!("state spec {spec:?} is missing {what}"))
    };
    let expect_len = |len: usize| -> Result<()> {
        if parts.len() > len {
            bail!("unexpected trailing fields in state spec {spec:?}");
        }
        Ok(())
    };
    let state = match kind {
        "eta" => {
            expect_len(2)?;
            zoo::eta(n)?
        }
        "ghz" => {
            expect_len(2)?;
            zoo::ghz(n)?
        }
        "genghz" => {
            expect_len(3)?;
            let a0_sq: f64 = parse_num(arg(2, "|a0|^2")?, "|a0|^2")?;
            if !(0.0..=1.0).contains(&a0_sq) {
                bail!("|a0|^2 = {a0_sq} must lie in [0, 1]");
            }
            zoo::generalized_ghz(
                n,
                Complex64::new(a0_sq.sqrt(), 0.0),
                Complex64::new((1.0 - a0_sq).sqrt(), 0.0),
            )?
        }
        "w" => {
            expect_len(2)?;
            zoo::w_state(n)?
        }
        "balanced" => {
            expect_len(2)?;
            zoo::balanced_state(n)?
        }
        "etaghzmix" => {
            expect_len(3)?;
            zoo::eta_ghz_mix(n, parse_num(arg(2, "a_ghz")?, "a_ghz")?)?
        }
        "evenodd" => {
            expect_len(3)?;
            zoo::even_odd_mix(n, parse_num(arg(2, "a_even")?, "a_even")?)?
        }
        "basis" => {
            expect_len(3)?;
            RegisterState::basis(n, parse_num(arg(2, "basis index")?, "basis index")?)?
        }
        "random" => {
            let mut rs = RandomStateSpec::new(n, 0);
            let mut seen_seed = false;
            for kv in &parts[2..] {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| anyhow!("expected key=value in {kv:?}"))?;
                match k {
                    "seed" => {
                        rs.seed = parse_num(v, "seed")?;
                        seen_seed = true;
                    }
                    "sigma" => rs.sigma = parse_num(v, "sigma")?,
                    _ => bail!("unknown random-state option {k:?}"),
                }
            }
            if !seen_seed {
                bail!("random state spec {spec:?} needs seed=<int>");
            }
            zoo::random_state(&rs)?
        }
        other => bail!("unknown state kind {other:?}"),
    };
    Ok(state)
}

pub fn parse_marked(spec: &str, n: usize) -> Result<MarkedSet> {
    let spec = spec.trim();
    if spec == "w" {
        return Ok(MarkedSet::new(n, (0..n).map(|k| 1usize << k).collect())?);
    }
    let mut indices = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = parse_num(lo, "marked index")?;
                let hi: usize = parse_num(hi, "marked index")?;
                if lo > hi {
                    bail!("empty range {tok:?}");
                }
                indices.extend(lo..=hi);
            }
            None => indices.push(parse_num(tok, "marked index")?),
        }
    }
    Ok(MarkedSet::new(n, indices)?)
}

/// Comma-separated floats, e.g. `0.7071,0.984`.
pub fn parse_f64_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_num(t, "number"))
        .collect()
}

pub fn parse_usize_list(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_num(t, "integer"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_state_kind() {
        for (spec, n) in [
            ("eta:12", 12),
            ("ghz:3", 3),
            ("genghz:12:0.3", 12),
            ("w:5", 5),
            ("balanced:4", 4),
            ("etaghzmix:12:0.5", 12),
            ("evenodd:12:0.984", 12),
            ("random:6:seed=42", 6),
            ("random:4:seed=1:sigma=2.5", 4),
            ("basis:4:6", 4),
        ] {
            let s = parse_state(spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
            assert_eq!(s.n(), n, "{spec}");
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
        let g = parse_state("genghz:3:0.3").unwrap();
        assert!((g.amplitudes()[0].norm_sqr() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_state_specs() {
        for spec in [
            "",
            "eta",
            "eta:x",
            "foo:3",
            "genghz:3",
            "genghz:3:1.5",
            "random:3",
            "random:3:bogus=1",
            "ghz:3:1",
            "balanced:3",
            "file:/nonexistent/state.txt",
        ] {
            assert!(parse_state(spec).is_err(), "{spec:?} should fail");
        }
    }

    #[test]
    fn reads_state_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("psi.txt");
        let ghz = zoo::ghz(3).unwrap();
        ghz.write_file(&path).unwrap();
        let back = parse_state(&format!("file:{}", path.display())).unwrap();
        assert_eq!(back, ghz);
    }

    #[test]
    fn parses_marked_sets() {
        assert_eq!(parse_marked("0", 12).unwrap().indices(), &[0]);
        assert_eq!(parse_marked("0,4095", 12).unwrap().indices(), &[0, 4095]);
        assert_eq!(parse_marked("0-11", 12).unwrap().len(), 12);
        assert_eq!(parse_marked("w", 4).unwrap().indices(), &[1, 2, 4, 8]);
        assert!(parse_marked("", 3).is_err());
        assert!(parse_marked("9", 3).is_err());
        assert!(parse_marked("3-1", 3).is_err());
        assert!(parse_marked("1,1", 3).is_err());
    }
}
