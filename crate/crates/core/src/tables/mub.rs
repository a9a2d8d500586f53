use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{dec, frac, Reference, TableId, TableOptions, TableReport, TableReproducer, TableRow};
use crate::bounds::{bound_record, d4_family_scan, d4_pair_scan, design_closed_bounds, separable_lower_bound, FamilyScan};
use crate::correlations::CorrelationSpec;
use crate::designs::{standard_mubs, Design, DesignKind};
use crate::error::Result;

/// Lower bounds are matched to 5e-4 throughout; upper bounds to 1e-6.
const LOWER_TOL: f64 = 5e-4;
const UPPER_TOL: f64 = 1e-6;

/// d = 4 triple-family scan for these options, memoized per process.
pub fn family_scan(opts: &TableOptions) -> Result<Arc<FamilyScan>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<FamilyScan>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let scan = opts.scan();
    let key = serde_json::to_string(&scan).expect("plain data");
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let computed = Arc::new(d4_family_scan(&scan)?);
    cache.lock().expect("cache lock").insert(key, computed.clone());
    Ok(computed)
}

pub struct MubBoundsTable;

impl TableReproducer for MubBoundsTable {
    fn id(&self) -> TableId {
        TableId::I
    }

    fn title(&self) -> &'static str {
        "Separable bounds for m mutually unbiased bases, d = 2, 3, 4"
    }

    fn reproduce(&self, opts: &TableOptions) -> Result<TableReport> {
        let mut rows = Vec::new();
        let lower: [(usize, usize, Reference); 5] = [
            (2, 2, frac(1, 2)),
            (2, 3, frac(1, 1)),
            (3, 2, dec("0.211")),
            (3, 3, frac(1, 2)),
            (3, 4, frac(1, 1)),
        ];
        for (d, m, reference) in lower {
            let set = standard_mubs(d)?.prefix(m)?;
            let lo = separable_lower_bound(&CorrelationSpec::new(set).projector_pairs(), &opts.optimizer(d))?;
            rows.push(TableRow::new(format!("L(m={m},d={d})"), lo.value, reference, LOWER_TOL));
        }

        let d4 = opts.optimizer(4);
        let pairs = d4_pair_scan(opts.scan.grid_steps, &d4)?;
        let pair_min = pairs.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let pair_max = pairs.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        rows.push(TableRow::new("L-(m=2,d=4)", pair_min, frac(0, 1), LOWER_TOL));
        rows.push(TableRow::new("L+(m=2,d=4)", pair_max, frac(0, 1), LOWER_TOL));
        let triples = family_scan(opts)?;
        rows.push(TableRow::new("L-(m=3,d=4)", triples.lower_min.lower, frac(1, 4), LOWER_TOL));
        rows.push(TableRow::new("L+(m=3,d=4)", triples.lower_max.lower, frac(1, 2), LOWER_TOL));
        // four or five bases in d = 4 form a single equivalence class
        for (m, reference) in [(4, frac(1, 2)), (5, frac(1, 1))] {
            let set = standard_mubs(4)?.prefix(m)?;
            let lo = separable_lower_bound(&CorrelationSpec::new(set).projector_pairs(), &d4)?.value;
            rows.push(TableRow::new(format!("L-(m={m},d=4)"), lo, reference.clone(), LOWER_TOL));
            rows.push(TableRow::new(format!("L+(m={m},d=4)"), lo, reference, LOWER_TOL));
        }

        let upper: [(usize, usize, Reference); 9] = [
            (2, 2, frac(3, 2)),
            (2, 3, frac(2, 1)),
            (3, 2, frac(4, 3)),
            (3, 3, frac(5, 3)),
            (3, 4, frac(2, 1)),
            (4, 2, frac(5, 4)),
            (4, 3, frac(6, 4)),
            (4, 4, frac(7, 4)),
            (4, 5, frac(2, 1)),
        ];
        for (d, m, reference) in upper {
            let set = standard_mubs(d)?.prefix(m)?;
            let rec = bound_record(&CorrelationSpec::new(set), &opts.optimizer(d))?;
            rows.push(TableRow::new(format!("U(m={m},d={d})"), rec.upper, reference, UPPER_TOL));
        }
        Ok(TableReport::new(self.id(), self.title(), rows))
    }
}

pub struct CompleteDesignTable;

impl TableReproducer for CompleteDesignTable {
    fn id(&self) -> TableId {
        TableId::Eq12
    }

    fn title(&self) -> &'static str {
        "Optimizer bounds on complete designs against the exact values"
    }

    fn reproduce(&self, opts: &TableOptions) -> Result<TableReport> {
        let mut rows = Vec::new();
        for kind in [DesignKind::Mub, DesignKind::Sic] {
            for d in 2..=4 {
                let (lo, hi) = design_closed_bounds(d, kind)?;
                let rec = bound_record(&CorrelationSpec::new(Design::standard(kind, d)?), &opts.optimizer(d))?;
                let exact = |v: f64| match kind {
                    DesignKind::Mub => frac(v as i64, 1),
                    DesignKind::Sic => frac((v * (d + 1) as f64).round() as i64, (d + 1) as i64),
                };
                rows.push(TableRow::at_precision(format!("{kind} L(d={d})"), rec.lower, exact(lo)));
                rows.push(TableRow::at_precision(format!("{kind} U(d={d})"), rec.upper, exact(hi)));
            }
        }
        Ok(TableReport::new(self.id(), self.title(), rows))
    }
}
