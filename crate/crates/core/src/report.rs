//! Counted check results shared by the verification suites.

use std::fmt;

/// One class of checks: how many instances were examined, how many failed,
/// and the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub instances: u64,
    pub violations: u64,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            instances: 0,
            violations: 0,
            witness: None,
        }
    }

    /// Counts one instance. `witness` is only evaluated for the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn absorb(&mut self, other: &Check) {
        self.instances += other.instances;
        self.violations += other.violations;
        if self.witness.is_none() {
            self.witness.clone_from(&other.witness);
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>10} checked  {:>6} violations",
            self.name, self.instances, self.violations
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n    first: {w}")?;
        }
        Ok(())
    }
}

/// A titled list of checks, informational counters and free-form notes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    /// Counts that are not pass/fail, such as how often a premise was met.
    pub tallies: Vec<(String, u64)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    /// The check named `name`, created on first use.
    pub fn check_mut(&mut self, name: &str) -> &mut Check {
        match self.checks.iter().position(|c| c.name == name) {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(Check::new(name));
                self.checks.last_mut().expect("just pushed")
            }
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.check_mut(name).record(ok, witness);
    }

    pub fn tally(&mut self, name: &str, n: u64) {
        match self.tallies.iter_mut().find(|(t, _)| t == name) {
            Some((_, v)) => *v += n,
            None => self.tallies.push((name.to_string(), n)),
        }
    }

    pub fn tally_of(&self, name: &str) -> u64 {
        self.tallies
            .iter()
            .find(|(t, _)| t == name)
            .map_or(0, |(_, v)| *v)
    }

    /// Adds the counts of `other` check by check; notes are kept once.
    pub fn absorb(&mut self, other: &Report) {
        for c in &other.checks {
            self.check_mut(&c.name).absorb(c);
        }
        for (t, v) in &other.tallies {
            self.tally(t, *v);
        }
        for n in &other.notes {
            if !self.notes.contains(n) {
                self.notes.push(n.clone());
            }
        }
    }

    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for (t, v) in &self.tallies {
            writeln!(f, "{t:<28} {v:>10}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_first_witness_only() {
        let mut r = Report::new("t");
        r.record("a", true, || unreachable!());
        r.record("a", false, || "one".into());
        r.record("a", false, || "two".into());
        let a = r.check("a").unwrap();
        assert_eq!((a.instances, a.violations), (3, 2));
        assert_eq!(a.witness.as_deref(), Some("one"));
        assert!(!r.passed());

        let mut total = Report::new("sum");
        total.absorb(&r);
        total.absorb(&r);
        assert_eq!(total.check("a").unwrap().instances, 6);
        assert_eq!(total.violations(), 4);

        r.tally("seen", 2);
        r.tally("seen", 3);
        assert_eq!(r.tally_of("seen"), 5);
        assert_eq!(r.tally_of("other"), 0);
    }
}
