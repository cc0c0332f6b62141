//! The closed-form self-check table.

use rectcft::oracle::{run_all, Status};

pub struct OracleOutcome {
    pub text: String,
    pub pass: bool,
}

/// Runs every oracle row; `pass` is false if any row fails or errors.
pub fn oracle_report() -> OracleOutcome {
    let mut text = format!("{:<28} {:>6} {:>10} {:>8}  {:<8} {}\n", "check", "points", "worst", "tol", "status", "worst at");
    let mut pass = true;
    for (label, row) in run_all() {
        match row {
            Ok(r) => {
                let status = match r.status() {
                    Status::Pass => "pass",
                    Status::Fail => {
                        pass = false;
                        "FAIL"
                    }
                    Status::NoForms => "no forms",
                };
                text += &format!(
                    "{:<28} {:>6} {:>10.2e} {:>8.0e}  {:<8} {}\n",
                    label, r.checks, r.worst, r.tolerance, status, r.worst_at
                );
            }
            Err(e) => {
                pass = false;
                text += &format!("{label:<28} error: {e}\n");
            }
        }
    }
    OracleOutcome { text, pass }
}
