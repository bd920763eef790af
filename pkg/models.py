from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class NilcoverError(ValueError):
    """Base class for every error raised by the library"""


class ParseError(NilcoverError):
    """Text that does not follow the algebra, partition or block grammar"""


class DomainError(NilcoverError):
    """Well-formed input rejected by the mathematics"""


class SizeMismatchError(DomainError):
    pass


class InvalidPartitionError(DomainError):
    def __init__(self, message: str, violating_part: Optional[int] = None, multiplicity: Optional[int] = None):
        super().__init__(message)
        self.violating_part = violating_part
        self.multiplicity = multiplicity


class NotSingularError(DomainError):
    pass


class ShapeMismatchError(DomainError):
    pass


class CollapseAssertionError(DomainError):
    pass


class OracleBoundError(DomainError):
    pass


class ReportWriteError(NilcoverError):
    """The PDF exporter could not write its output file"""


class Series(str, Enum):
    SO = "so"
    SP = "sp"


@dataclass(frozen=True)
class Algebra:
    """A classical Lie algebra so_N or sp_N, identified by its series and matrix size"""
    series: Series
    size: int

    def __post_init__(self):
        if not isinstance(self.series, Series):
            object.__setattr__(self, 'series', Series(self.series))
        if self.size < 0:
            raise DomainError(f"Algebra size must be nonnegative, got {self.size}")
        if self.series is Series.SP and self.size % 2:
            raise DomainError(f"sp_N requires even N, got {self.size}")

    @property
    def epsilon(self) -> int:
        return 1 if self.series is Series.SO else -1

    @property
    def dimension(self) -> int:
        n = self.size
        if self.series is Series.SO:
            return n * (n - 1) // 2
        return n * (n + 1) // 2

    @property
    def rank(self) -> int:
        return self.size // 2

    @property
    def is_simple(self) -> bool:
        if self.series is Series.SO:
            return self.size == 3 or self.size >= 5
        return self.size >= 2

    @property
    def name(self) -> str:
        return f"{self.series.value}{self.size}"

    def with_size(self, size: int) -> 'Algebra':
        return Algebra(self.series, size)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; rows past the end read as zero"""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts):
            raise DomainError(f"Partition parts must be nonnegative: {parts}")
        parts = tuple(x for x in parts if x > 0)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"Partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def from_text(cls, text: str) -> 'Partition':
        from partition import parse_partition
        return parse_partition(text)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def row(self, i: int) -> int:
        """1-based row access"""
        if i < 1:
            raise IndexError(f"Rows are numbered from 1, got {i}")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def multiplicity(self, value: int) -> int:
        return self.parts.count(value)

    def distinct_parts(self) -> List[int]:
        return sorted(set(self.parts), reverse=True)

    def to_list(self) -> List[int]:
        return list(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(str(x) for x in self.parts)


@dataclass(frozen=True)
class SingularData:
    m: int
    d_m: int

    def to_dict(self) -> Dict[str, int]:
        return {'m': self.m, 'd_m': self.d_m}


@dataclass(frozen=True)
class Orbit:
    algebra: Algebra
    partition: Partition
    very_even: bool = False

    @classmethod
    def from_parts(cls, algebra: Algebra, parts) -> 'Orbit':
        from orbit import make_orbit
        return make_orbit(algebra, Partition(tuple(sorted(parts, reverse=True))))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'algebra': self.algebra.name,
            'partition': self.partition.to_list(),
            'very_even': self.very_even,
        }

    def __str__(self):
        return f"{self.algebra.name}[{self.partition}]"


@dataclass(frozen=True)
class Pi1Group:
    """(Z/2Z)^exponent"""
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise DomainError(f"Negative exponent {self.exponent}")

    @property
    def order(self) -> int:
        return 2 ** self.exponent

    def __str__(self):
        if self.exponent == 0:
            return "1"
        if self.exponent == 1:
            return "Z/2"
        return f"(Z/2)^{self.exponent}"


@dataclass(frozen=True)
class Singularity:
    """Kleinian singularity type, the smooth germ, or a union of two Kleinian germs"""
    family: str
    rank: int = 0
    union_of_two: bool = False

    @classmethod
    def smooth(cls) -> 'Singularity':
        return cls('smooth', 0)

    @classmethod
    def kleinian(cls, family: str, rank: int, union_of_two: bool = False) -> 'Singularity':
        if family == 'D' and rank == 3:
            # D_3 and A_3 are the same germ
            family = 'A'
        if family == 'A' and rank < 1:
            raise DomainError(f"A_{rank} is not a Kleinian type")
        if family == 'D' and rank < 4:
            raise DomainError(f"D_{rank} is not a Kleinian type")
        if family not in ('A', 'D'):
            raise DomainError(f"Unsupported Kleinian family {family}")
        return cls(family, rank, union_of_two)

    @property
    def is_smooth(self) -> bool:
        return self.family == 'smooth'

    def same_kleinian_type(self, other: 'Singularity') -> bool:
        return (self.family, self.rank) == (other.family, other.rank)

    def __str__(self):
        if self.is_smooth:
            return "smooth"
        label = f"{self.family}_{self.rank}"
        if self.union_of_two:
            return f"{label} u {label}"
        return label

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family,
            'rank': self.rank,
            'union_of_two': self.union_of_two,
            'label': str(self),
        }


@dataclass(frozen=True)
class CoverSingularity:
    kind: Singularity
    components: int = 1

    def __str__(self):
        return str(self.kind)

    def to_dict(self) -> Dict[str, Any]:
        result = self.kind.to_dict()
        result['components'] = self.components
        return result


@dataclass(frozen=True)
class HmGroup:
    order: int

    def __post_init__(self):
        if self.order not in (1, 2):
            raise DomainError(f"H_m has order 1 or 2, got {self.order}")

    def __str__(self):
        return "1" if self.order == 1 else "Z/2"


@dataclass(frozen=True)
class MinimalDegeneration:
    """A codimension 2 pair with its common rows and columns erased"""
    upper: Partition
    lower: Partition
    r: int
    s: int
    q: int
    m: int
    alpha_prime: Partition
    beta_prime: Partition
    case: str
    k: int
    d_m: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'upper': self.upper.to_list(),
            'lower': self.lower.to_list(),
            'r': self.r,
            's': self.s,
            'q': self.q,
            'm': self.m,
            'alpha_prime': self.alpha_prime.to_list(),
            'beta_prime': self.beta_prime.to_list(),
            'case': self.case,
            'k': self.k,
            'd_m': self.d_m,
        }


@dataclass(frozen=True)
class LeviShape:
    gl_blocks: Tuple[int, ...]
    residual: Algebra

    def __post_init__(self):
        blocks = tuple(sorted((int(b) for b in self.gl_blocks), reverse=True))
        if any(b < 1 for b in blocks):
            raise DomainError(f"gl blocks must be positive: {blocks}")
        object.__setattr__(self, 'gl_blocks', blocks)

    def notation(self) -> str:
        factors = []
        for block in sorted(set(self.gl_blocks)):
            count = self.gl_blocks.count(block)
            factors.append(f"gl{block}" if count == 1 else f"gl{block}^{count}")
        factors.append(self.residual.name)
        return " × ".join(factors)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'gl_blocks': list(self.gl_blocks),
            'residual': self.residual.name,
            'notation': self.notation(),
        }


@dataclass(frozen=True)
class NamikawaReport:
    dim_total: int
    dim_smooth: int
    leaves: Dict[int, int] = field(default_factory=dict)
    smooth_derived: bool = False

    def __post_init__(self):
        if self.dim_total != self.dim_smooth + sum(self.leaves.values()):
            raise DomainError(
                f"Namikawa total {self.dim_total} differs from {self.dim_smooth} + {sum(self.leaves.values())}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dim_total': self.dim_total,
            'dim_smooth': self.dim_smooth,
            'smooth_derived': self.smooth_derived,
            'leaves': [{'m': m, 'dim': dim} for m, dim in sorted(self.leaves.items())],
        }


@dataclass(frozen=True)
class InductionStep:
    m: int
    before: Partition
    raised: Partition
    raised_valid: bool
    after: Partition
    birational: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'before': self.before.to_list(),
            'raised': self.raised.to_list(),
            'raised_valid': self.raised_valid,
            'after': self.after.to_list(),
            'birational': self.birational,
        }


@dataclass(frozen=True)
class CoverLeaf:
    """One codimension 2 leaf of Spec C[universal cover] with its closure data"""
    child: Orbit
    degeneration: MinimalDegeneration
    closure: Singularity
    hm: HmGroup
    cover: CoverSingularity
    dim_orbit_leaf: int
    dim_cover_leaf: int
    etale: bool
    leaf_count: int = 1

    @property
    def m(self) -> int:
        return self.degeneration.m

    @property
    def case_e_normalization(self) -> bool:
        return self.degeneration.case == 'e'

    def to_dict(self) -> Dict[str, Any]:
        md = self.degeneration
        return {
            'm': md.m,
            'child': self.child.partition.to_list(),
            'child_very_even': self.child.very_even,
            'q': md.q,
            'case': md.case,
            'k': md.k,
            'd_m': md.d_m,
            'closure_singularity': self.closure.to_dict(),
            'non_normal_union': self.closure.union_of_two,
            'hm_order': self.hm.order,
            'cover_singularity': self.cover.to_dict(),
            'dim_orbit_leaf': self.dim_orbit_leaf,
            'dim_cover_leaf': self.dim_cover_leaf,
            'etale': self.etale,
            'leaf_count': self.leaf_count,
            'case_e_normalization': self.case_e_normalization,
        }


@dataclass(frozen=True)
class CoverReport:
    orbit: Orbit
    namikawa: NamikawaReport
    leaves: Tuple[CoverLeaf, ...] = ()
    levi_blocks: Tuple[int, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'orbit': self.orbit.to_dict(),
            'namikawa': self.namikawa.to_dict(),
            'leaves': [leaf.to_dict() for leaf in self.leaves],
            'levi_blocks': list(self.levi_blocks),
        }


@dataclass(frozen=True)
class ConsistencyReport:
    checks_run: int
    failures: Tuple[Tuple[str, str], ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            'checks_run': self.checks_run,
            'passed': self.passed,
            'failures': [{'check': name, 'witness': witness} for name, witness in self.failures],
        }


SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class OutputEnvelope:
    command: str
    result: Dict[str, Any]
    warnings: Tuple[str, ...] = ()
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': self.schema_version,
            'command': self.command,
            'result': self.result,
            'warnings': list(self.warnings),
        }
