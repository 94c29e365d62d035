//! CSV tables consumed by the plotting scripts. Sites are numbered from 1
//! in every table; floats use the shortest representation that round-trips.

use std::io::Write;

use crate::circuit::DetectionSpectrum;
use crate::disorder::DisorderRow;
use crate::dynamics::{SweepRow, Trajectory};
use crate::error::{Error, Result};
use crate::spectral::{ScanResult, SiteDistribution};

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io("writing CSV", io),
        other => Error::numeric(format!("CSV encoding failed: {other:?}")),
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn finish<W: Write>(mut wr: csv::Writer<W>) -> Result<()> {
    wr.flush().map_err(|e| Error::io("writing CSV", e))
}

/// `theta,E_1,...,E_2N`.
pub fn write_spectrum<W: Write>(w: W, scan: &ScanResult) -> Result<()> {
    let mut wr = writer(w);
    let mut header = vec!["theta".to_string()];
    header.extend((1..=scan.n_sites).map(|k| format!("E_{k}")));
    wr.write_record(&header).map_err(csv_err)?;
    for row in &scan.rows {
        let mut rec = vec![row.theta.to_string()];
        rec.extend(row.energies.iter().map(f64::to_string));
        wr.write_record(&rec).map_err(csv_err)?;
    }
    finish(wr)
}

/// `theta,site,p` for one distribution per θ.
pub fn write_distributions<'a, W, I>(w: W, rows: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = (f64, &'a SiteDistribution)>,
{
    let mut wr = writer(w);
    wr.write_record(["theta", "site", "p"]).map_err(csv_err)?;
    for (theta, d) in rows {
        for (i, p) in d.probabilities.iter().enumerate() {
            wr.write_record([theta.to_string(), (i + 1).to_string(), p.to_string()]).map_err(csv_err)?;
        }
    }
    finish(wr)
}

/// `t,theta,site,population`.
pub fn write_trajectory<W: Write>(w: W, traj: &Trajectory) -> Result<()> {
    let mut wr = writer(w);
    wr.write_record(["t", "theta", "site", "population"]).map_err(csv_err)?;
    for k in 0..traj.len() {
        let (t, th) = (traj.times[k].to_string(), traj.thetas[k].to_string());
        for (i, p) in traj.populations(k).iter().enumerate() {
            wr.write_record([t.as_str(), th.as_str(), &(i + 1).to_string(), &p.to_string()]).map_err(csv_err)?;
        }
    }
    finish(wr)
}

/// `omega,fidelity_overlap,fidelity_distribution`.
pub fn write_sweep<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut wr = writer(w);
    wr.write_record(["omega", "fidelity_overlap", "fidelity_distribution"]).map_err(csv_err)?;
    for r in rows {
        wr.write_record([r.omega.to_string(), r.fidelity_overlap.to_string(), r.fidelity_distribution.to_string()])
            .map_err(csv_err)?;
    }
    finish(wr)
}

/// `channel,log10W,mean_fidelity,stddev_fidelity,samples,seed`.
pub fn write_disorder<W: Write>(w: W, rows: &[DisorderRow]) -> Result<()> {
    let mut wr = writer(w);
    wr.write_record(["channel", "log10W", "mean_fidelity", "stddev_fidelity", "samples", "seed"])
        .map_err(csv_err)?;
    for r in rows {
        wr.write_record([
            r.channel.to_string(),
            r.log10w.to_string(),
            r.mean_fidelity.to_string(),
            r.stddev_fidelity.to_string(),
            r.samples.to_string(),
            r.seed.to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish(wr)
}

/// `omega_d,site,population`.
pub fn write_detection<W: Write>(w: W, spec: &DetectionSpectrum) -> Result<()> {
    let mut wr = writer(w);
    wr.write_record(["omega_d", "site", "population"]).map_err(csv_err)?;
    for (omega, pops) in spec.omegas.iter().zip(&spec.populations) {
        let o = omega.to_string();
        for (i, p) in pops.iter().enumerate() {
            wr.write_record([o.as_str(), &(i + 1).to_string(), &p.to_string()]).map_err(csv_err)?;
        }
    }
    finish(wr)
}

/// `theta,max_abs_diff`.
pub fn write_mapping<W: Write>(w: W, rows: &[(f64, f64)]) -> Result<()> {
    let mut wr = writer(w);
    wr.write_record(["theta", "max_abs_diff"]).map_err(csv_err)?;
    for (theta, d) in rows {
        wr.write_record([theta.to_string(), d.to_string()]).map_err(csv_err)?;
    }
    finish(wr)
}
