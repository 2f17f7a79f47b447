use serde_json::{json, Value};
use stark_core::coeffs::{
    energy_series, rational_to_f64, shift_prefactor, CoeffError, EnergyConfig, SymbolicEnergySeries,
};
use stark_core::figures::{
    dimension_model, figure1, figure2, figure3, linear_grid, log_grid, FigureError, QUOTED_CRITICAL_FIELDS,
};
use stark_core::resum::{fit_model, sweep, ResumError};
use stark_core::validate::{dispersion_report, ValidateError};
use stark_core::wkb::{barrier_model, landau_calibrated_rate, landau_closed_form, WkbError};

use crate::output::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        match e {
            CoeffError::InvalidDimension(_)
            | CoeffError::OrderTooLarge { .. }
            | CoeffError::OrderTooSmall
            | CoeffError::OutOfRange { .. } => CliError::Invalid(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ResumError> for CliError {
    fn from(e: ResumError) -> Self {
        match e {
            ResumError::InvalidL(_)
            | ResumError::InvalidField(_)
            | ResumError::InvalidGrid(_)
            | ResumError::InsufficientOrder(_) => CliError::Invalid(e.to_string()),
            ResumError::Coeff(inner) => inner.into(),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<WkbError> for CliError {
    fn from(e: WkbError) -> Self {
        match e {
            WkbError::DomainError(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ValidateError> for CliError {
    fn from(e: ValidateError) -> Self {
        match e {
            ValidateError::NotValid(_) | ValidateError::OrderTooSmall(_) => CliError::Invalid(e.to_string()),
            ValidateError::Resum(inner) => inner.into(),
            ValidateError::IntegrationFailure(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<FigureError> for CliError {
    fn from(e: FigureError) -> Self {
        match e {
            FigureError::InvalidGrid => CliError::Invalid(e.to_string()),
            FigureError::Coeff(inner) => inner.into(),
            FigureError::Resum(inner) => inner.into(),
            FigureError::Wkb(inner) => inner.into(),
        }
    }
}

/// Field grid `S:E:K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected S:E:K, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let count = count.trim().parse::<usize>().map_err(|e| format!("{count:?}: {e}"))?;
        if count < 2 {
            return Err("grid count must be at least 2".into());
        }
        Ok(Self { start: num(start)?, stop: num(stop)?, count })
    }
}

impl GridSpec {
    pub fn points(&self, log: bool) -> Result<Vec<f64>, CliError> {
        let g = if log {
            log_grid(self.start, self.stop, self.count)
        } else {
            linear_grid(self.start, self.stop, self.count)
        };
        Ok(g?)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn coeffs(alpha: Option<f64>, order: usize, symbolic: bool) -> Result<Table, CliError> {
    if symbolic {
        let sym = SymbolicEnergySeries::new(order, EnergyConfig::default())?;
        let mut t = Table::new(vec!["n", "power", "prefactor", "reduced_polynomial", "shift_polynomial"]);
        t.meta("variable", json!("a"));
        t.meta("form", json!("E_2n(a) = prefactor * reduced_polynomial"));
        for n in 1..=order {
            t.push(vec![
                n.into(),
                (2 * n).into(),
                shift_prefactor(n).display_with("a").into(),
                sym.reduced_polynomial(n)?.display_with("a").into(),
                sym.shift_in_alpha(n)?.display_with("a").into(),
            ]);
        }
        return Ok(t);
    }
    let alpha = alpha.ok_or_else(|| CliError::Invalid("--alpha is required without --symbolic".into()))?;
    let series = energy_series(alpha, order)?;
    let mut t = Table::new(vec!["n", "power", "value", "exact"]);
    t.meta("params", to_json(&series.params));
    for (n, e) in series.e_coeffs.iter().enumerate() {
        t.push(vec![n.into(), (2 * n).into(), rational_to_f64(e).into(), e.to_string().into()]);
    }
    Ok(t)
}

pub fn fit(alpha: f64, l: f64) -> Result<Table, CliError> {
    let series = energy_series(alpha, 4)?;
    let model = fit_model(&series, l)?;
    let back = model.taylor_coefficients(4)?;
    let residual = back.iter().zip(&series.e_f64()[1..]).map(|(b, e)| (b - e).norm() / e.abs()).fold(0.0, f64::max);
    let mut t = Table::new(vec!["parameter", "re", "im"]);
    t.meta("alpha", json!(alpha));
    t.meta("l", json!(l));
    t.meta("e0", json!(model.e0));
    t.meta("round_trip_residual", json!(residual));
    for (name, h) in [("h1", model.h1), ("h2", model.h2), ("h3", model.h3), ("h4", model.h4)] {
        t.push(vec![name.to_string().into(), h.re.into(), h.im.into()]);
    }
    Ok(t)
}

pub fn sweep_table(alpha: f64, l: f64, fields: &[f64]) -> Result<Table, CliError> {
    let model = dimension_model(alpha, l)?;
    let points = sweep(&model, fields)?;
    let mut t = Table::new(vec!["field", "delta", "gamma"]);
    t.meta("model", to_json(&model));
    for p in points {
        t.push(vec![p.field.into(), p.delta.into(), p.gamma.into()]);
    }
    Ok(t)
}

pub fn wkb(alpha: f64, l: f64, fields: &[f64]) -> Result<Table, CliError> {
    let model = dimension_model(alpha, l)?;
    let p = model_p(alpha)?;
    let reference = sweep(&model, fields)?;
    let calibrated = landau_calibrated_rate(p, fields, &reference)?;
    let calibration_field = reference.iter().find(|r| r.field > 0.0 && r.gamma > 1e-30).map(|r| r.field);
    let mut t = Table::new(vec!["field", "y1", "y2", "T_numeric", "T_closed", "gamma_landau_calibrated"]);
    t.meta("p", json!(p));
    t.meta("calibration_field", json!(calibration_field));
    for (&field, &(_, landau)) in fields.iter().zip(&calibrated) {
        let (y1, y2, tn) = match barrier_model(p, field) {
            Ok(b) => (Some(b.y1), Some(b.y2), Some(b.transmittance)),
            Err(WkbError::NoBarrier { .. }) => (None, None, None),
            Err(e) => return Err(e.into()),
        };
        t.push(vec![
            field.into(),
            y1.into(),
            y2.into(),
            tn.into(),
            landau_closed_form(p, field)?.into(),
            landau.into(),
        ]);
    }
    Ok(t)
}

fn model_p(alpha: f64) -> Result<f64, CliError> {
    Ok(stark_core::coeffs::DimensionParams::new(alpha)?.p)
}

pub fn dispersion(alpha: f64, l: f64) -> Result<Table, CliError> {
    let series = energy_series(alpha, 4)?;
    let model = fit_model(&series, l)?;
    let report = dispersion_report(&model, &series)?;
    let mut t = Table::new(vec![
        "n",
        "series",
        "integral",
        "relative_error",
        "error_estimate",
        "lower_cutoff",
        "upper_cutoff",
        "evaluations",
    ]);
    t.meta("alpha", json!(alpha));
    t.meta("l", json!(l));
    for e in &report.entries {
        t.push(vec![
            e.n.into(),
            e.series.into(),
            e.integral.value.into(),
            e.relative_error.into(),
            e.integral.error.into(),
            e.integral.lower_cutoff.into(),
            e.integral.upper_cutoff.into(),
            e.integral.evaluations.into(),
        ]);
    }
    Ok(t)
}

pub fn reproduce(figure: u8, l: f64) -> Result<Table, CliError> {
    match figure {
        1 => {
            let f = figure1(l)?;
            let mut t = Table::new(vec!["field", "delta", "gamma"]);
            t.meta("model", to_json(&f.model));
            t.meta("delta_minimum", json!(f.delta_minimum));
            for p in &f.points {
                t.push(vec![p.field.into(), p.delta.into(), p.gamma.into()]);
            }
            Ok(t)
        }
        2 => {
            let f = figure2(l)?;
            let mut t = Table::new(vec!["alpha", "p", "field", "delta", "gamma", "linear_fit"]);
            let panels: Vec<Value> = f
                .panels
                .iter()
                .zip(QUOTED_CRITICAL_FIELDS)
                .map(|(p, quoted)| {
                    json!({
                        "alpha": p.case.alpha,
                        "p": p.p,
                        "field_max": p.case.field_max,
                        "critical_field": p.critical.field,
                        "quoted_critical_field": quoted,
                        "slope": p.critical.fit.slope,
                        "intercept": p.critical.fit.intercept,
                        "r_squared": p.critical.fit.r_squared,
                        "window_fraction": p.critical.window_fraction,
                        "window_start": p.critical.window_start,
                        "model": to_json(&p.model),
                    })
                })
                .collect();
            t.meta("critical_fields", json!(f.panels.iter().map(|p| p.critical.field).collect::<Vec<_>>()));
            t.meta("slope_exponent", json!(f.slope_exponent));
            t.meta("panels", Value::Array(panels));
            for panel in &f.panels {
                let fit = panel.critical.fit;
                for pt in &panel.points {
                    t.push(vec![
                        panel.case.alpha.into(),
                        panel.p.into(),
                        pt.field.into(),
                        pt.delta.into(),
                        pt.gamma.into(),
                        (fit.slope * pt.field + fit.intercept).into(),
                    ]);
                }
            }
            Ok(t)
        }
        3 => {
            let f = figure3(l)?;
            let mut t = Table::new(vec!["alpha", "p", "field", "gamma", "gamma_landau", "log_closed_form"]);
            let panels: Vec<Value> = f
                .panels
                .iter()
                .map(|p| {
                    json!({
                        "alpha": p.case.alpha,
                        "p": p.p,
                        "window_critical_field": p.window_critical_field,
                        "calibration_field": p.calibration_field,
                    })
                })
                .collect();
            t.meta("panels", Value::Array(panels));
            for panel in &f.panels {
                for r in &panel.rows {
                    t.push(vec![
                        panel.case.alpha.into(),
                        panel.p.into(),
                        r.field.into(),
                        r.gamma.into(),
                        r.gamma_landau.into(),
                        r.log_closed_form.into(),
                    ]);
                }
            }
            Ok(t)
        }
        _ => Err(CliError::Invalid(format!("figure must be 1, 2 or 3, got {figure}"))),
    }
}
