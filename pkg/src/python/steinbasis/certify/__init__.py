"""
Certify imports
"""

from .certificate import Certificates, PositivityCertificate
from .domination import Domination, Ledger, Plan
from .grid import Grid, GridResult
from .psh import Certify
from .roots import Claims, RootClaim, RootCountError, Sturm
