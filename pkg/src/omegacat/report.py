from dataclasses import dataclass, field


@dataclass
class ValidationReport:
    """Outcome of a law check: violations are (law, witness ids) pairs."""

    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def status(self):
        return "pass" if not self.violations else "fail"

    @property
    def ok(self):
        return not self.violations

    def add(self, law, *witnesses):
        self.violations.append((law, tuple(str(w) for w in witnesses)))

    def count(self, law, n=1):
        self.counts[law] = self.counts.get(law, 0) + n

    def merge(self, other, prefix=""):
        for law, wit in other.violations:
            self.violations.append((prefix + law, wit))
        for law, n in other.counts.items():
            self.count(prefix + law, n)
        return self

    def laws(self):
        return sorted({law for law, _ in self.violations})

    def to_dict(self, limit=50):
        vs = sorted(self.violations)
        return {
            "status": self.status,
            "violations": [{"law": law, "witness": list(w)} for law, w in vs[:limit]],
            "violation_count": len(vs),
            "counts": dict(sorted(self.counts.items())),
        }
