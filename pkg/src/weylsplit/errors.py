"""Domain error types shared across the package.

Every error the library can raise on bad mathematical input derives from
DomainError, so callers (and the CLI) can distinguish domain failures from
programming bugs.
"""


class DomainError(Exception):
    pass


# --- cartan ---

class NotGCM(DomainError):
    """Matrix violates the generalized Cartan matrix axioms."""


class NotFiniteType(DomainError):
    """Valid GCM, but some connected component is not of finite type."""


class OrbitTooLarge(DomainError):
    """A Weyl orbit exceeded the configured cap."""


# --- numbersgame ---

class IllegalFire(DomainError):
    """Attempt to fire a node whose number is not positive."""


# --- wsf ---

class DiagramMismatch(DomainError):
    """Binary operation on objects over different diagrams."""


class NotInvariant(DomainError):
    """Group-ring element failed a Weyl-invariance check."""


# --- ecposet ---

class NotAcyclic(DomainError):
    """Edge relation contains a directed cycle."""


class NotCovering(DomainError):
    """An edge is implied by a longer path, so it is not a covering relation."""


class NotRanked(DomainError):
    """No rank function exists for the given edge relation."""


class NotMStructured(DomainError):
    """Operation requires an M-structured poset."""


class NotConnected(DomainError):
    """Operation requires a connected poset."""


class NotChainProduct(DomainError):
    """A monochromatic component failed chain-product factorization."""


# --- crystal ---

class NotMinuscule(DomainError):
    """Weight is not dominant minuscule."""


class NotIrreducible(DomainError):
    """Operation requires an irreducible (connected) diagram."""


class NotFibrous(DomainError):
    """Crystal product requires fibrous factors."""


class NotPrimaryFactor(DomainError):
    """Vertex coloring construction requires primary factors."""


class NoExpression(DomainError):
    """No product expression found (defensive; cannot occur for finite type)."""


# --- patternlat ---

class InvalidFamilyParams(DomainError):
    """Parameters outside the family's validity range."""
