//! The published orbit tables, recomputed next to their printed values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::constants::{BR_GAMMA_UM, DAY, M_EARTH, M_SUN, MINUTE, YEAR};
use super::delay::time_delay;
use super::doppler::{s2_doppler, DopplerPoint};
use super::scenario::{OrbitScenario, RadiusSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    /// Sun as central body.
    T731,
    /// Earth as central body.
    T732,
    /// Sgr A* and S2.
    T733,
    /// S2 Doppler shift, 4.1e6 M⊙.
    T741,
    /// S2 Doppler shift, 3.7e6 M⊙.
    T742,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::T731, TableId::T732, TableId::T733, TableId::T741, TableId::T742];

    pub fn as_str(self) -> &'static str {
        match self {
            TableId::T731 => "7.3.1",
            TableId::T732 => "7.3.2",
            TableId::T733 => "7.3.3",
            TableId::T741 => "7.4.1",
            TableId::T742 => "7.4.2",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown table '{s}' (expected one of 7.3.1, 7.3.2, 7.3.3, 7.4.1, 7.4.2)")))
    }
}

/// One computed quantity with its published counterpart.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub column: String,
    pub quantity: String,
    pub unit: &'static str,
    pub computed: f64,
    pub published: Option<f64>,
    /// `(computed − published)/published`.
    pub rel_delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub id: TableId,
    pub caption: &'static str,
    pub rows: Vec<TableRow>,
    pub notes: Vec<String>,
}

fn row(column: &str, quantity: &str, unit: &'static str, computed: f64, published: Option<f64>) -> TableRow {
    TableRow {
        column: column.into(),
        quantity: quantity.into(),
        unit,
        computed,
        published,
        rel_delta: published.map(|p| (computed - p) / p),
    }
}

struct DelayEntry {
    column: &'static str,
    mass: f64,
    radius: f64,
    period: f64,
    published: f64,
}

fn delay_rows(entries: &[DelayEntry], unit_scale: f64, unit: &'static str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for e in entries {
        let sc = OrbitScenario::circular(e.mass, Some(e.radius), Some(e.period));
        let d = time_delay(&sc, RadiusSource::Given)?;
        rows.push(row(e.column, "distance", "cm", d.radius, Some(e.radius)));
        rows.push(row(e.column, "time delay", unit, d.delta_t / unit_scale, Some(e.published)));
    }
    Ok(rows)
}

fn doppler_rows(column: &str, p: &DopplerPoint, published: [f64; 3]) -> Vec<TableRow> {
    vec![
        row(column, "distance", "cm", p.r, Some(p.r)),
        row(column, "speed", "cm/s", p.speed, Some(published[0])),
        row(column, "omega'/omega", "1", p.ratio, Some(published[1])),
        row(column, "emitted wave", "um", BR_GAMMA_UM, Some(BR_GAMMA_UM)),
        row(column, "observed wave", "um", p.lambda_obs, Some(published[2])),
    ]
}

/// Published S2 Doppler values: pericentre/apocentre `[speed, ω′/ω, λ_obs]` and `Δλ` (Å).
struct DopplerEntry {
    mass_suns: f64,
    r_peri: f64,
    r_apo: f64,
    peri: [f64; 3],
    apo: [f64; 3],
    delta_lambda: f64,
}

fn doppler_table(e: &DopplerEntry) -> Result<(Vec<TableRow>, Vec<String>)> {
    let sc = OrbitScenario {
        mass: e.mass_suns * M_SUN,
        radius: None,
        period: None,
        r_peri: Some(e.r_peri),
        r_apo: Some(e.r_apo),
        lambda_emit: Some(BR_GAMMA_UM),
    };
    let d = s2_doppler(&sc)?;
    let mut rows = doppler_rows("pericentre", &d.pericentre, e.peri);
    rows.extend(doppler_rows("apocentre", &d.apocentre, e.apo));
    rows.push(row("both", "wavelength difference", "angstrom", d.delta_lambda, Some(e.delta_lambda)));
    let notes = vec![
        "speeds are Keplerian vis-viva speeds with a = (r_peri + r_apo)/2".into(),
        format!(
            "light-signal speed sqrt(r/(r-rg)) V exceeds vis-viva by {:.3e} cm/s at pericentre, {:.3e} cm/s at apocentre",
            d.pericentre.measured_speed_gap, d.apocentre.measured_speed_gap
        ),
    ];
    Ok((rows, notes))
}

/// Recomputes one table.
pub fn table(id: TableId) -> Result<Table> {
    match id {
        TableId::T731 => {
            let rows = delay_rows(
                &[
                    DelayEntry { column: "Earth", mass: M_SUN, radius: 1.495985e13, period: 365.257 * DAY, published: 0.15575 },
                    DelayEntry { column: "Mercury", mass: M_SUN, radius: 5.791e12, period: 58.6462 * DAY, published: 0.14536 },
                ],
                1.0,
                "s",
            )?;
            Ok(Table {
                id,
                caption: "Sun is central body, mass 1.989e33 g",
                rows,
                notes: vec![
                    "Earth's delay is also printed as 0.155750625445089 s; agreement is limited by the constants used".into(),
                    "Mercury's period of 58.6462 d is its rotation period; the printed distance is used, not the Kepler radius".into(),
                ],
            })
        }
        TableId::T732 => {
            let rows = delay_rows(
                &[
                    DelayEntry { column: "spaceship", mass: M_EARTH, radius: 6.916e8, period: 95.6 * MINUTE, published: 1.8318e-6 },
                    DelayEntry { column: "Moon", mass: M_EARTH, radius: 3.84e10, period: 27.32 * DAY, published: 1.372e-5 },
                ],
                1.0,
                "s",
            )?;
            Ok(Table { id, caption: "Earth is central body, mass 5.977e27 g", rows, notes: vec![] })
        }
        TableId::T733 => {
            let mut rows = Vec::new();
            let mut notes = Vec::new();
            for (column, suns, printed_r, published) in
                [("4.1e6 Msun", 4.1e6, 1.4692e16, 164.7295), ("3.7e6 Msun", 3.7e6, 1.1565e16, 153.8326)]
            {
                let sc = OrbitScenario::circular(suns * M_SUN, Some(printed_r), Some(15.2 * YEAR));
                let d = time_delay(&sc, RadiusSource::Kepler)?;
                rows.push(row(column, "distance (kepler)", "cm", d.radius, Some(printed_r)));
                rows.push(row(column, "time delay", "min", d.delta_t / MINUTE, Some(published)));
                let printed = time_delay(&sc, RadiusSource::Given)?;
                rows.push(row(column, "time delay (printed distance)", "min", printed.delta_t / MINUTE, Some(published)));
                notes.push(format!(
                    "{column}: Kepler radius {:.5e} cm vs printed {:.5e} cm",
                    d.radius, printed_r
                ));
            }
            notes.push("delays use the Kepler radius r^3 = G M T^2 / 4 pi^2; the printed 3.7e6 distance is Kepler-inconsistent".into());
            Ok(Table { id, caption: "Sgr A* is central body, S2 orbits it (period 15.2 yr)", rows, notes })
        }
        TableId::T741 => {
            let (rows, notes) = doppler_table(&DopplerEntry {
                mass_suns: 4.1e6,
                r_peri: 1.868e15,
                r_apo: 2.769e16,
                peri: [738_767_495.4, 1.000628, 2.16474],
                apo: [49_839_993.28, 1.0000232, 2.166049],
                delta_lambda: 13.098,
            })?;
            Ok(Table { id, caption: "Doppler shift on Earth of a wave emitted from S2; Sgr A* mass 4.1e6 Msun", rows, notes })
        }
        TableId::T742 => {
            let (rows, notes) = doppler_table(&DopplerEntry {
                mass_suns: 3.7e6,
                r_peri: 1.805e15,
                r_apo: 2.676e16,
                peri: [713_915_922.3, 1.000587, 2.16483],
                apo: [48_163_414.05, 1.00002171, 2.1666052],
                delta_lambda: 12.232,
            })?;
            Ok(Table { id, caption: "Doppler shift on Earth of a wave emitted from S2; Sgr A* mass 3.7e6 Msun", rows, notes })
        }
    }
}

impl Table {
    /// First row matching `column` and `quantity`.
    pub fn find(&self, column: &str, quantity: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.column == column && r.quantity == quantity)
    }
}
