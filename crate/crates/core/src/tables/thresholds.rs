use super::sic::hesse_spectrum;
use super::{coarse, TableId, TableOptions, TableReport, TableReproducer, TableRow};
use crate::designs::DesignKind;
use crate::error::Result;
use crate::scan::critical_parameters;
use crate::states::StateFamily;

/// Critical Werner and isotropic parameters for the best Hesse subsets.
///
/// Werner states are caught through the largest lower bound, isotropic
/// states through the smallest upper bound.
pub struct CriticalValueTable;

impl TableReproducer for CriticalValueTable {
    fn id(&self) -> TableId {
        TableId::Fig3
    }

    fn title(&self) -> &'static str {
        "Critical parameters for Werner and isotropic states with m Hesse SIC vectors"
    }

    fn reproduce(&self, opts: &TableOptions) -> Result<TableReport> {
        let werner = [(6, "0.11"), (7, "0.13"), (8, "0.28"), (9, "0.5")];
        let isotropic = [
            (3, "1.19"),
            (4, "0.91"),
            (5, "0.76"),
            (6, "0.61"),
            (7, "0.46"),
            (8, "0.34"),
            (9, "0.25"),
        ];
        let mut rows = Vec::new();
        for (m, reference) in werner {
            let s = hesse_spectrum(m, opts)?;
            let c = critical_parameters(StateFamily::Werner, 3, DesignKind::Sic, m, s.lower_max, s.upper_min)?;
            rows.push(TableRow::at_precision(format!("p(m={m})"), c.at_lower, coarse(reference)));
        }
        for (m, reference) in isotropic {
            let s = hesse_spectrum(m, opts)?;
            let c = critical_parameters(StateFamily::Isotropic, 3, DesignKind::Sic, m, s.lower_max, s.upper_min)?;
            rows.push(TableRow::at_precision(format!("q(m={m})"), c.at_upper, coarse(reference)));
        }
        Ok(TableReport::new(self.id(), self.title(), rows))
    }
}
