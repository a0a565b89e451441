"""Shared helpers for the certificate tests and the acceptance gate."""

from fractions import Fraction

from quandlelab.affine import NonIsoCertificate


def random_rational(rng, max_num=60, max_den=40, allow_negative=True):
    num = rng.randrange(1, max_num + 1)
    den = rng.randrange(1, max_den + 1)
    q = Fraction(num, den)
    if allow_negative and rng.random() < 0.5:
        q = -q
    return q


def certificate_mutations(cert):
    """Tampered variants that can never validate, whatever the original."""
    yield NonIsoCertificate("NoSuchCase", cert.t1, cert.t2, cert.m, cert.n)
    yield NonIsoCertificate(cert.case, cert.t1, cert.t1, cert.m, cert.n)
    if cert.m is not None:
        yield NonIsoCertificate(cert.case, cert.t1, cert.t2, cert.m, 0)
        if -1 not in (cert.t1, cert.t2):
            # push m/n far beyond both ratios; on a single branch the two
            # log-claims then share a sign (near t = -1 one claim ignores m,
            # so that family is excluded)
            yield NonIsoCertificate(cert.case, cert.t1, cert.t2,
                                    (abs(cert.m) + 10) * 100000, cert.n)
    if cert.case == "SignMismatch":
        yield NonIsoCertificate(cert.case, abs(cert.t1), abs(cert.t2))
    if cert.case == "TrivialVsNontrivial":
        yield NonIsoCertificate(cert.case, Fraction(2), Fraction(3))
    if cert.case == "ScaleAcrossOne":
        yield NonIsoCertificate(cert.case, Fraction(2), Fraction(3))
