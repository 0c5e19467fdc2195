//! Report structures and their table/json/csv renderings.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Output of `eval` and `check`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub expr: String,
    pub at: f64,
    pub order: usize,
    pub seed: Vec<f64>,
    pub value: f64,
    pub derivatives: Vec<f64>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
}

/// Cross-check summary attached by `check`.
#[derive(Debug, Serialize)]
pub struct OracleBlock {
    pub seeds_compared: usize,
    pub max_seed_deviation: f64,
    pub seed_tolerance: f64,
    pub finite_difference: Vec<FdComparison>,
    pub max_oracle_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct FdComparison {
    pub order: usize,
    pub estimate: f64,
    pub deviation: f64,
    pub tolerance: f64,
}

/// Output of `norm`.
#[derive(Debug, Serialize)]
pub struct NormReport {
    pub coeffs: Vec<f64>,
    pub order: usize,
    pub beta: f64,
    pub l1: f64,
    pub l2_star: f64,
    pub beta_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_check: Option<ProductCheck>,
}

#[derive(Debug, Serialize)]
pub struct ProductCheck {
    pub other: Vec<f64>,
    pub product_beta_norm: f64,
    pub bound: f64,
    pub submultiplicative: bool,
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<20} {v}\n"));
        };
        line("expression", self.expr.clone());
        line("point", self.at.to_string());
        line("order", self.order.to_string());
        line("seed", join(&self.seed));
        line("value", self.value.to_string());
        for (i, d) in self.derivatives.iter().enumerate() {
            line(&format!("d{}", i + 1), d.to_string());
        }
        if let Some(oracle) = &self.oracle {
            line("seeds compared", oracle.seeds_compared.to_string());
            line(
                "max seed deviation",
                format!(
                    "{:e} (tolerance {:e})",
                    oracle.max_seed_deviation, oracle.seed_tolerance
                ),
            );
            for fd in &oracle.finite_difference {
                line(
                    &format!("fd d{}", fd.order),
                    format!(
                        "estimate {}, deviation {:e} (tolerance {:e})",
                        fd.estimate, fd.deviation, fd.tolerance
                    ),
                );
            }
            line(
                "max fd deviation",
                format!("{:e}", oracle.max_oracle_deviation),
            );
            line(
                "verdict",
                if oracle.passed { "PASS" } else { "FAIL" }.to_string(),
            );
        }
        for note in &self.diagnostics {
            line("note", note.clone());
        }
        out
    }

    fn render_csv(&self) -> String {
        // One row per derivative order; order 0 is the value itself.
        let mut out = String::new();
        if let Some(oracle) = &self.oracle {
            out.push_str("order,value,fd_estimate,fd_deviation,fd_tolerance\n");
            out.push_str(&format!("0,{},,,\n", self.value));
            for (i, d) in self.derivatives.iter().enumerate() {
                match oracle.finite_difference.iter().find(|f| f.order == i + 1) {
                    Some(fd) => out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        i + 1,
                        d,
                        fd.estimate,
                        fd.deviation,
                        fd.tolerance
                    )),
                    None => out.push_str(&format!("{},{},,,\n", i + 1, d)),
                }
            }
        } else {
            out.push_str("order,value\n");
            out.push_str(&format!("0,{}\n", self.value));
            for (i, d) in self.derivatives.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, d));
            }
        }
        out
    }
}

impl NormReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<20} {v}\n"));
        };
        line("coefficients", join(&self.coeffs));
        line("order", self.order.to_string());
        line("beta", self.beta.to_string());
        line("l1 norm", self.l1.to_string());
        line("l2* norm", self.l2_star.to_string());
        line("beta norm", self.beta_norm.to_string());
        if let Some(check) = &self.product_check {
            line("other", join(&check.other));
            line("|x*y|_beta", check.product_beta_norm.to_string());
            line("|x|_beta*|y|_beta", check.bound.to_string());
            line(
                "submultiplicative",
                if check.submultiplicative { "PASS" } else { "FAIL" }.to_string(),
            );
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("quantity,value\n");
        out.push_str(&format!("l1,{}\n", self.l1));
        out.push_str(&format!("l2_star,{}\n", self.l2_star));
        out.push_str(&format!("beta_norm,{}\n", self.beta_norm));
        if let Some(check) = &self.product_check {
            out.push_str(&format!("product_beta_norm,{}\n", check.product_beta_norm));
            out.push_str(&format!("bound,{}\n", check.bound));
            out.push_str(&format!(
                "submultiplicative,{}\n",
                if check.submultiplicative { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}
