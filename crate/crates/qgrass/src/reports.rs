//! Batch report layer behind the command-line front end: every subcommand is
//! a pure function from a validated `RunConfig` to a deterministic rendered
//! report plus an overall pass flag.
//!
//! All numbers in reports are exact strings or integers, never floats, and
//! repeated runs with the same configuration produce byte-identical output.

use serde_json::{json, Value};

use crate::derham::{
    cohomology, cohomology_csv, complex_check, partial_ops_check, poincare_check, SuperWeight,
};
use crate::detrand::SplitMix64;
use crate::omega::{action_matrices, dim_formula, relations_check, GradedPiece};
use crate::scalars::{
    char_q, pascal_check, q_lucas_check, q_lucas_column_check, CycNum, Rat, RootSpec,
};
use crate::structure::{
    edeg_filtration, inclusion_net, net_to_dot, socle_certify_piece,
};
use crate::superindex::Shape;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Identities,
    Dims,
    Relations,
    Socle,
    Loewy,
    Net,
    Derham,
    Poincare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
}

/// Validated run configuration shared by every subcommand. The root spec is
/// validated eagerly; the shape only when a subcommand needs one, so the
/// scalar identity surface accepts even characteristics with order `2ℓ`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub ell: u64,
    pub order: u64,
    pub r: u64,
    degrees_raw: Option<String>,
    all_s: bool,
    pub weight: Option<SuperWeight>,
    pub format: OutputFormat,
}

impl RunConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        m: usize,
        n: usize,
        ell: u64,
        order: Option<u64>,
        r: u64,
        s: Option<&str>,
        all_s: bool,
        weight: Option<&str>,
        format: OutputFormat,
    ) -> Result<RunConfig> {
        let order = order.unwrap_or(ell);
        RootSpec::new(ell, order)?;
        let weight = match weight {
            None => None,
            Some(text) => Some(parse_weight(text, m, n)?),
        };
        Ok(RunConfig {
            m,
            n,
            ell,
            order,
            r,
            degrees_raw: s.map(str::to_owned),
            all_s,
            weight,
            format,
        })
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::new(self.m, self.n, self.ell, self.r)
    }

    /// Explicitly requested degrees, validated against the shape.
    pub fn degrees(&self) -> Result<Vec<u64>> {
        let shape = self.shape()?;
        if self.all_s {
            return Ok((0..=shape.top_degree()).collect());
        }
        match &self.degrees_raw {
            None => Ok(Vec::new()),
            Some(text) => parse_degrees(text, shape.top_degree()),
        }
    }

    fn degrees_or_all(&self) -> Result<Vec<u64>> {
        let listed = self.degrees()?;
        if listed.is_empty() {
            let shape = self.shape()?;
            Ok((0..=shape.top_degree()).collect())
        } else {
            Ok(listed)
        }
    }
}

fn parse_degrees(text: &str, top: u64) -> Result<Vec<u64>> {
    let parse_one = |t: &str| -> Result<u64> {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::InvalidConfig(format!("bad degree '{t}'")))
    };
    let list = if let Some((a, b)) = text.split_once("..") {
        let lo = parse_one(a)?;
        let hi = parse_one(b)?;
        (lo..=hi).collect()
    } else {
        vec![parse_one(text)?]
    };
    for &s in &list {
        if s > top {
            return Err(Error::InvalidConfig(format!(
                "degree {s} above top degree {top}"
            )));
        }
    }
    Ok(list)
}

/// Weight syntax: even entries, then `;`, then odd bits, e.g. `3,0;1`.
fn parse_weight(text: &str, m: usize, n: usize) -> Result<SuperWeight> {
    let (even_text, odd_text) = match text.split_once(';') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    let parse_list = |t: &str| -> Result<Vec<u64>> {
        if t.trim().is_empty() {
            return Ok(Vec::new());
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidConfig(format!("bad weight entry '{x}'")))
            })
            .collect()
    };
    let even = parse_list(even_text)?;
    let odd64 = parse_list(odd_text)?;
    if even.len() != m || odd64.len() != n {
        return Err(Error::InvalidConfig(format!(
            "weight must have {m} even entries and {n} odd bits"
        )));
    }
    if odd64.iter().any(|&b| b > 1) {
        return Err(Error::InvalidConfig("odd weight entries are bits".into()));
    }
    Ok(SuperWeight {
        even,
        odd: odd64.into_iter().map(|b| b as u8).collect(),
    })
}

/// A rendered report plus the conjunction of its embedded assertions.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Rendered> {
    match command {
        Command::Identities => cmd_identities(cfg),
        Command::Dims => cmd_dims(cfg),
        Command::Relations => cmd_relations(cfg),
        Command::Socle => cmd_socle(cfg),
        Command::Loewy => cmd_loewy(cfg),
        Command::Net => cmd_net(cfg),
        Command::Derham => cmd_derham(cfg),
        Command::Poincare => cmd_poincare(cfg),
    }
}

/// q-combinatorics identity sweep: the two-term recurrence, both digit
/// factorizations, the recomputed characteristic and random field inverses.
pub fn cmd_identities(cfg: &RunConfig) -> Result<Rendered> {
    if cfg.format != OutputFormat::Json {
        return Err(Error::InvalidConfig("identities reports are JSON".into()));
    }
    let spec = RootSpec::new(cfg.ell, cfg.order)?;
    let max_s = 30u64;
    let mut families = Vec::new();
    let mut passed = true;

    let mut checked = 0u64;
    let mut failures: Vec<String> = Vec::new();
    for s in 0..=max_s {
        for r in 1..=s {
            checked += 1;
            if !pascal_check(s as i64, r as i64, spec) {
                failures.push(format!("({s},{r})"));
            }
        }
    }
    passed &= failures.is_empty();
    families.push(json!({"name": "pascal", "checked": checked, "failures": failures}));

    let mut checked = 0u64;
    let mut failures: Vec<String> = Vec::new();
    for s in 0..=max_s {
        for r in 0..=s {
            checked += 1;
            if !q_lucas_check(s, r, spec) {
                failures.push(format!("({s},{r})"));
            }
        }
    }
    passed &= failures.is_empty();
    families.push(json!({"name": "digit_factorization", "checked": checked, "failures": failures}));

    let mut checked = 0u64;
    let mut failures: Vec<String> = Vec::new();
    for s in 0..=max_s {
        checked += 1;
        if !q_lucas_column_check(s, spec) {
            failures.push(format!("{s}"));
        }
    }
    passed &= failures.is_empty();
    families.push(json!({"name": "column_factorization", "checked": checked, "failures": failures}));

    let char_ok = char_q(spec) == cfg.ell;
    passed &= char_ok;
    families.push(json!({
        "name": "characteristic",
        "checked": 1,
        "failures": if char_ok { Vec::<String>::new() } else { vec![format!("char != {}", cfg.ell)] }
    }));

    let mut rng = SplitMix64::new(0x1de2);
    let field = spec.field();
    let mut checked = 0u64;
    let mut failures: Vec<String> = Vec::new();
    while checked < 100 {
        let mut c = CycNum::zero(field.clone());
        for k in 0..field.degree() {
            let r = Rat::new(rng.range_i64(-9, 9).into(), rng.range_i64(1, 7).into());
            c = c.add(&CycNum::from_rat(field.clone(), r).mul(&spec.q_pow(k as i64)));
        }
        if c.is_zero() {
            continue;
        }
        checked += 1;
        if !c.mul(&c.inv()).is_one() {
            failures.push(c.to_canonical_string());
        }
    }
    passed &= failures.is_empty();
    families.push(json!({"name": "field_inverses", "checked": checked, "failures": failures}));

    let report = json!({
        "spec": {"ell": cfg.ell, "order": cfg.order},
        "max_index": max_s,
        "families": families,
        "passed": passed,
    });
    Ok(Rendered {
        text: to_pretty(&report),
        passed,
    })
}

/// Enumerated against closed-form dimensions for the requested degrees, plus
/// the total count over all degrees.
pub fn cmd_dims(cfg: &RunConfig) -> Result<Rendered> {
    let shape = cfg.shape()?;
    let mut rows = Vec::new();
    let mut passed = true;
    for s in cfg.degrees_or_all()? {
        let enumerated = crate::superindex::enumerate_graded(&shape, s).len() as u64;
        let formula = dim_formula(&shape, s).to_string();
        let ok = formula == enumerated.to_string();
        passed &= ok;
        rows.push((s, enumerated, formula, ok));
    }
    let grand_total: u64 = (0..=shape.top_degree())
        .map(|s| crate::superindex::enumerate_graded(&shape, s).len() as u64)
        .sum();
    let expected_total = (shape.r * shape.ell).pow(shape.m as u32) * 2u64.pow(shape.n as u32);
    passed &= grand_total == expected_total;
    match cfg.format {
        OutputFormat::Csv => {
            let mut text = String::from("s,enumerated,formula,ok\n");
            for (s, e, f, ok) in &rows {
                text.push_str(&format!("{s},{e},{f},{ok}\n"));
            }
            text.push_str(&format!("total,{grand_total},{expected_total},{passed}\n"));
            Ok(Rendered { text, passed })
        }
        OutputFormat::Json => {
            let report = json!({
                "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
                "rows": rows.iter().map(|(s, e, f, ok)| json!({
                    "s": s, "enumerated": e, "formula": f, "ok": ok
                })).collect::<Vec<_>>(),
                "total": grand_total,
                "expected_total": expected_total,
                "passed": passed,
            });
            Ok(Rendered {
                text: to_pretty(&report),
                passed,
            })
        }
        OutputFormat::Dot => Err(Error::InvalidConfig("dims has no DOT rendering".into())),
    }
}

/// Defining-relation verification on the requested graded pieces.
pub fn cmd_relations(cfg: &RunConfig) -> Result<Rendered> {
    if cfg.format != OutputFormat::Json {
        return Err(Error::InvalidConfig("relations reports are JSON".into()));
    }
    let shape = cfg.shape()?;
    let spec = shape.spec();
    let mut reports = Vec::new();
    let mut passed = true;
    for s in cfg.degrees_or_all()? {
        let piece = GradedPiece::new(shape, s);
        let am = action_matrices(&piece);
        let rep = relations_check(&am, spec);
        passed &= rep.all_pass;
        reports.push(serde_json::to_value(&rep).unwrap());
    }
    let report = json!({
        "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
        "pieces": reports,
        "passed": passed,
    });
    Ok(Rendered {
        text: to_pretty(&report),
        passed,
    })
}

/// Socle certificates for the requested degrees.
pub fn cmd_socle(cfg: &RunConfig) -> Result<Rendered> {
    if cfg.format != OutputFormat::Json {
        return Err(Error::InvalidConfig("socle certificates are JSON".into()));
    }
    let shape = cfg.shape()?;
    let mut certs = Vec::new();
    let mut passed = true;
    for s in cfg.degrees_or_all()? {
        let (_, cert) = socle_certify_piece(&shape, s)?;
        passed &= cert.passed;
        certs.push(serde_json::to_value(&cert).unwrap());
    }
    let report = json!({
        "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
        "certificates": certs,
        "passed": passed,
    });
    Ok(Rendered {
        text: to_pretty(&report),
        passed,
    })
}

/// Energy filtrations with Loewy layers for the requested degrees.
pub fn cmd_loewy(cfg: &RunConfig) -> Result<Rendered> {
    if cfg.format != OutputFormat::Json {
        return Err(Error::InvalidConfig("loewy reports are JSON".into()));
    }
    let shape = cfg.shape()?;
    let mut reports = Vec::new();
    let mut passed = true;
    for s in cfg.degrees_or_all()? {
        let rep = edeg_filtration(&shape, s)?;
        passed &= rep.passed;
        reports.push(serde_json::to_value(&rep).unwrap());
    }
    let report = json!({
        "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
        "filtrations": reports,
        "passed": passed,
    });
    Ok(Rendered {
        text: to_pretty(&report),
        passed,
    })
}

/// Submodule inclusion net in DOT (default) or JSON.
pub fn cmd_net(cfg: &RunConfig) -> Result<Rendered> {
    let shape = cfg.shape()?;
    let degrees = cfg.degrees()?;
    if degrees.is_empty() {
        return Err(Error::InvalidConfig("net requires --s".into()));
    }
    match cfg.format {
        OutputFormat::Dot => {
            if degrees.len() != 1 {
                return Err(Error::InvalidConfig(
                    "DOT rendering takes a single degree".into(),
                ));
            }
            let net = inclusion_net(&shape, degrees[0])?;
            let passed = net.passed;
            Ok(Rendered {
                text: net_to_dot(&net),
                passed,
            })
        }
        OutputFormat::Json => {
            let mut nets = Vec::new();
            let mut passed = true;
            for s in degrees {
                let net = inclusion_net(&shape, s)?;
                passed &= net.passed;
                nets.push(serde_json::to_value(&net).unwrap());
            }
            let report = json!({
                "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
                "nets": nets,
                "passed": passed,
            });
            Ok(Rendered {
                text: to_pretty(&report),
                passed,
            })
        }
        OutputFormat::Csv => Err(Error::InvalidConfig("net has no CSV rendering".into())),
    }
}

/// Full de Rham verification: the complex property, lowering-operator
/// commutation at every degree, and the block-exact cohomology table.
pub fn cmd_derham(cfg: &RunConfig) -> Result<Rendered> {
    let shape = cfg.shape()?;
    let complex = complex_check(&shape)?;
    let mut partial_ok = true;
    for s in 0..=shape.top_degree() {
        partial_ok &= partial_ops_check(&shape, s)?;
    }
    let table = cohomology(&shape)?;
    let passed = complex.ok && complex.enlarged_ok && partial_ok && table.passed;
    match cfg.format {
        OutputFormat::Csv => Ok(Rendered {
            text: cohomology_csv(&table),
            passed,
        }),
        OutputFormat::Json => {
            let report = json!({
                "shape": {"m": shape.m, "n": shape.n, "ell": shape.ell, "r": shape.r},
                "complex": serde_json::to_value(&complex).unwrap(),
                "partial_ops_ok": partial_ok,
                "cohomology": serde_json::to_value(&table).unwrap(),
                "passed": passed,
            });
            Ok(Rendered {
                text: to_pretty(&report),
                passed,
            })
        }
        OutputFormat::Dot => Err(Error::InvalidConfig("derham has no DOT rendering".into())),
    }
}

/// Per-weight acyclicity of the untruncated complex.
pub fn cmd_poincare(cfg: &RunConfig) -> Result<Rendered> {
    if cfg.format != OutputFormat::Json {
        return Err(Error::InvalidConfig("poincare reports are JSON".into()));
    }
    let lambda = cfg
        .weight
        .clone()
        .ok_or_else(|| Error::InvalidConfig("poincare requires --weight".into()))?;
    let rep = poincare_check(cfg.m, cfg.n, cfg.ell, &lambda)?;
    let passed = rep.exact;
    let report = json!({
        "m": cfg.m, "n": cfg.n, "ell": cfg.ell,
        "report": serde_json::to_value(&rep).unwrap(),
        "passed": passed,
    });
    Ok(Rendered {
        text: to_pretty(&report),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: usize, n: usize, ell: u64, r: u64) -> RunConfig {
        RunConfig::build(m, n, ell, None, r, None, false, None, OutputFormat::Json).unwrap()
    }

    #[test]
    fn identities_default_spec() {
        let rendered = cmd_identities(&cfg(2, 1, 3, 1)).unwrap();
        assert!(rendered.passed);
        assert!(rendered.text.contains("digit_factorization"));
    }

    #[test]
    fn identities_even_order_branch() {
        let c =
            RunConfig::build(2, 1, 5, Some(10), 1, None, false, None, OutputFormat::Json).unwrap();
        assert!(cmd_identities(&c).unwrap().passed);
    }

    #[test]
    fn malformed_spec_is_config_error() {
        assert!(
            RunConfig::build(2, 1, 4, Some(4), 1, None, false, None, OutputFormat::Json).is_err()
        );
    }

    #[test]
    fn dims_csv_and_json() {
        let mut c = cfg(2, 1, 3, 1);
        let json_out = cmd_dims(&c).unwrap();
        assert!(json_out.passed);
        c.format = OutputFormat::Csv;
        let csv_out = cmd_dims(&c).unwrap();
        assert!(csv_out.passed);
        assert!(csv_out.text.starts_with("s,enumerated,formula,ok\n"));
    }

    #[test]
    fn derham_smallest() {
        let c = cfg(2, 1, 3, 1);
        let out = cmd_derham(&c).unwrap();
        assert!(out.passed);
        assert!(out.text.contains("\"dim_h\": 3"));
    }

    #[test]
    fn net_requires_degree() {
        let c = cfg(2, 1, 3, 2);
        assert!(cmd_net(&c).is_err());
        let c2 =
            RunConfig::build(2, 1, 3, None, 2, Some("5"), false, None, OutputFormat::Dot).unwrap();
        let out = cmd_net(&c2).unwrap();
        assert!(out.passed);
        assert!(out.text.starts_with("digraph"));
    }

    #[test]
    fn poincare_weight_parsing() {
        let c = RunConfig::build(
            2,
            1,
            3,
            None,
            1,
            None,
            false,
            Some("1,0;0"),
            OutputFormat::Json,
        )
        .unwrap();
        let out = cmd_poincare(&c).unwrap();
        assert!(out.passed);
        assert!(parse_weight("1,0", 2, 1).is_err());
        assert!(parse_weight("1,0;2", 2, 1).is_err());
    }

    #[test]
    fn deterministic_output() {
        let c = cfg(2, 1, 3, 1);
        let a = cmd_dims(&c).unwrap();
        let b = cmd_dims(&c).unwrap();
        assert_eq!(a.text, b.text);
        let a = cmd_identities(&c).unwrap();
        let b = cmd_identities(&c).unwrap();
        assert_eq!(a.text, b.text);
    }

    #[test]
    fn degree_range_parsing() {
        let c = RunConfig::build(
            2,
            1,
            3,
            None,
            2,
            Some("3..5"),
            false,
            None,
            OutputFormat::Json,
        )
        .unwrap();
        assert_eq!(c.degrees().unwrap(), vec![3, 4, 5]);
        let too_big = RunConfig::build(
            2,
            1,
            3,
            None,
            1,
            Some("99"),
            false,
            None,
            OutputFormat::Json,
        )
        .unwrap();
        assert!(too_big.degrees().is_err());
        // an even characteristic with doubled order reaches the scalar surface
        let even = RunConfig::build(
            2,
            1,
            4,
            Some(8),
            1,
            None,
            false,
            None,
            OutputFormat::Json,
        )
        .unwrap();
        assert!(cmd_identities(&even).unwrap().passed);
        // but shape-dependent commands reject it
        assert!(cmd_dims(&even).is_err());
    }
}
