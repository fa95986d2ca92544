//! Verification commands: each check produces a report with the first
//! failing location and both exact values, plus wall-clock runtime.
//! Pass/fail lines go to stdout (deterministic); timings go to stderr.

use crate::output::{rational_display, rational_list_display};
use crate::CmdError;
use k3enum::curvecounts::gw_pairs_check;
use k3enum::modforms::{delta_series, eisenstein, harvey_moore_check};
use k3enum::rational::{rat, Rational};
use k3enum::series::LaurentSeries;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub pass: bool,
    /// Indices of the first failing coefficient; None exactly when passing.
    pub location: Option<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn passing(name: impl Into<String>, runtime: Duration) -> Self {
        VerificationReport {
            name: name.into(),
            pass: true,
            location: None,
            lhs: None,
            rhs: None,
            runtime,
        }
    }

    pub fn failing(
        name: impl Into<String>,
        location: String,
        lhs: String,
        rhs: String,
        runtime: Duration,
    ) -> Self {
        VerificationReport {
            name: name.into(),
            pass: false,
            location: Some(location),
            lhs: Some(lhs),
            rhs: Some(rhs),
            runtime,
        }
    }

    /// The deterministic stdout line.
    pub fn line(&self) -> String {
        if self.pass {
            format!("{}: PASS", self.name)
        } else {
            format!(
                "{}: FAIL at {}: {} != {}",
                self.name,
                self.location.as_deref().unwrap_or("?"),
                self.lhs.as_deref().unwrap_or("?"),
                self.rhs.as_deref().unwrap_or("?"),
            )
        }
    }
}

pub fn gwpt_report(h_max: i64) -> Result<VerificationReport, CmdError> {
    if h_max < 0 {
        return Err(CmdError::BadInput(format!(
            "--hmax must be nonnegative, got {h_max}"
        )));
    }
    let start = Instant::now();
    let check = gw_pairs_check(h_max);
    let runtime = start.elapsed();
    let name = format!("gw-pairs correspondence (h <= {h_max})");
    Ok(match check.first_mismatch {
        None => VerificationReport::passing(name, runtime),
        Some(m) => VerificationReport::failing(
            name,
            format!("h={}", m.h),
            rational_list_display(&m.gw),
            rational_list_display(&m.pairs),
            runtime,
        ),
    })
}

pub fn harvey_moore_report(order: i64) -> Result<VerificationReport, CmdError> {
    if order < 2 {
        return Err(CmdError::BadInput(format!(
            "--order must be at least 2, got {order}"
        )));
    }
    let start = Instant::now();
    let check = harvey_moore_check(order);
    let runtime = start.elapsed();
    let name = format!("harvey-moore cleared identity (bidegree ({order},{order}))");
    Ok(match check.first_discrepancy {
        None => VerificationReport::passing(name, runtime),
        Some(d) => VerificationReport::failing(
            name,
            format!("(q1^{}, q2^{})", d.exponents.0, d.exponents.1),
            rational_display(&d.lhs),
            rational_display(&d.rhs),
            runtime,
        ),
    })
}

/// First exponent at which two series windows disagree.
fn first_series_difference(a: &LaurentSeries, b: &LaurentSeries) -> Option<(i64, Rational, Rational)> {
    let lo = a.min_exponent().min(b.min_exponent());
    let hi = a.truncation().min(b.truncation());
    for k in lo..hi {
        let x = a.coeff(k);
        let y = b.coeff(k);
        if x != y {
            return Some((k, x, y));
        }
    }
    None
}

fn identity_report(name: &str, lhs: &LaurentSeries, rhs: &LaurentSeries, start: Instant) -> VerificationReport {
    let runtime = start.elapsed();
    match first_series_difference(lhs, rhs) {
        None => VerificationReport::passing(name, runtime),
        Some((k, x, y)) => VerificationReport::failing(
            name.to_string(),
            format!("q^{k}"),
            rational_display(&x),
            rational_display(&y),
            runtime,
        ),
    }
}

/// The weight-12 cusp identity and the three Ramanujan derivations, exactly
/// to the requested order.
pub fn modform_reports(order: i64) -> Result<Vec<VerificationReport>, CmdError> {
    // Delta's expansion starts at q^1, so the window must reach past it.
    if order < 2 {
        return Err(CmdError::BadInput(format!(
            "--order must be at least 2, got {order}"
        )));
    }
    let mut out = Vec::with_capacity(4);

    let start = Instant::now();
    let e4 = eisenstein(4, order).map_err(|e| CmdError::BadInput(e.to_string()))?.series;
    let e6 = eisenstein(6, order).map_err(|e| CmdError::BadInput(e.to_string()))?.series;
    let delta = delta_series(order);
    let lhs = e4.pow(3).sub(&e6.pow(2));
    let rhs = delta.scale(&rat(1728));
    out.push(identity_report(
        &format!("E4^3 - E6^2 = 1728 Delta (order {order})"),
        &lhs,
        &rhs,
        start,
    ));

    let start = Instant::now();
    let e2 = eisenstein(2, order).map_err(|e| CmdError::BadInput(e.to_string()))?.series;
    let lhs = e2.q_d_dq();
    let rhs = e2.mul(&e2).sub(&e4).scale(&rat(12).recip());
    out.push(identity_report(
        &format!("q dE2/dq = (E2^2 - E4)/12 (order {order})"),
        &lhs,
        &rhs,
        start,
    ));

    let start = Instant::now();
    let lhs = e4.q_d_dq();
    let rhs = e2.mul(&e4).sub(&e6).scale(&rat(3).recip());
    out.push(identity_report(
        &format!("q dE4/dq = (E2 E4 - E6)/3 (order {order})"),
        &lhs,
        &rhs,
        start,
    ));

    let start = Instant::now();
    let lhs = e6.q_d_dq();
    let rhs = e2.mul(&e6).sub(&e4.pow(2)).scale(&rat(2).recip());
    out.push(identity_report(
        &format!("q dE6/dq = (E2 E6 - E4^2)/2 (order {order})"),
        &lhs,
        &rhs,
        start,
    ));

    Ok(out)
}
