"""Search bounds for the exhaustive enumerations."""

# (-1)-classes dH - sum(m_i e_i) on the plane blown up in r <= 8 points.
MAX_BLOWUP_RANK: int = 8
MINUS_ONE_DEGREE_MAX: int = 6
MINUS_ONE_MULTIPLICITY_MIN: int = -1
MINUS_ONE_MULTIPLICITY_MAX: int = 3

# Wider bounds used only to cross-check the ones above.
CROSS_CHECK_DEGREE_MAX: int = 10
CROSS_CHECK_MULTIPLICITY_BOUND: int = 5

# Small-height isotropy search for diagonal quadratic forms.
ISOTROPY_SEARCH_HEIGHT: int = 50

# Bitangent formula is stated for quartics with at most 4 outer ovals.
MAX_OUTER_OVALS: int = 4
