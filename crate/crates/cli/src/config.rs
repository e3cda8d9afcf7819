use projiso::{Budget, Error, Result};

use crate::GlobalOpts;

fn env<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Invalid(format!("cannot parse {name}={v}"))),
        Err(_) => Ok(None),
    }
}

/// Budget from the flags, with `PROJISO_BUDGET_*` variables taking precedence.
pub fn budget(opts: &GlobalOpts) -> Result<Budget> {
    let mut b = Budget::default();
    let spair = env("PROJISO_BUDGET_SPAIR_CAP")?.or(opts.spair_cap);
    let minor = env("PROJISO_BUDGET_MINOR_CAP")?.or(opts.minor_cap);
    let stage = env("PROJISO_BUDGET_ENUM_STAGE_CAP")?.or(opts.enum_stage_cap);
    let cand = env("PROJISO_BUDGET_CANDIDATE_CAP")?.or(opts.candidate_cap);
    let wall = env("PROJISO_BUDGET_WALL_SECONDS")?.or(opts.wall_seconds);
    if let Some(v) = spair {
        b.spair_cap = positive(v, "spair cap")?;
    }
    if let Some(v) = minor {
        b.minor_cap = positive(v, "minor cap")?;
    }
    if let Some(v) = stage {
        b.enum_stage_cap = positive(v as u64, "stage cap")? as u32;
    }
    if let Some(v) = cand {
        b.candidate_cap = positive(v, "candidate cap")?;
    }
    if let Some(w) = wall {
        if !(w > 0.0) {
            return Err(Error::Invalid("wall seconds must be positive".into()));
        }
        b.wall_seconds = Some(w);
    }
    Ok(b.start())
}

fn positive(v: u64, what: &str) -> Result<u64> {
    if v == 0 {
        return Err(Error::Invalid(format!("{what} must be positive")));
    }
    Ok(v)
}
