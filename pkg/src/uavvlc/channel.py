"""LED downlink physics and closed-form minimum-power rules.

Line-of-sight Lambertian channel between a downward-facing LED at height
z_u and an upward-facing photodiode on the ground, horizontal distance r,
link distance d = sqrt(r^2 + z_u^2):

    h = (m + 1) * A / (2 pi d^2) * g * cos^m(phi) * cos(psi)

where the irradiance and incidence angles coincide (cos phi = cos psi =
z_u / d), m is the Lambertian order of the LED and g is the optical
concentrator gain, constant inside the field of view and zero outside.

The achievable rate is lower-bounded by

    C = 1/2 * log2(1 + (e / 2 pi) * (xi * P * h / sigma_w)^2)

bits per transmission, with xi the electro-optic conversion factor, P the
transmit power and sigma_w the noise standard deviation.  Inverting C and
the illuminance target eta = xi * P * h gives the per-link minimum powers;
both scale as d^(m+3) once the geometry is folded in, which is what makes
the farthest user of each cell the binding one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import mpmath

_LN2 = math.log(2.0)
_TWO_PI = 2.0 * math.pi


class InfeasibleError(Exception):
    """A coverage or link-budget requirement cannot be met.

    Carries the offending UAV and user indices when the caller knows them.
    """

    def __init__(self, message: str, uav_index: Optional[int] = None,
                 user_index: Optional[int] = None):
        super().__init__(message)
        self.uav_index = uav_index
        self.user_index = user_index


def lambertian_order(tx_semi_angle: float) -> float:
    """Lambertian order m = -ln 2 / ln(cos Phi_1/2) of an LED.

    tx_semi_angle is the half-power semi-angle in radians, in (0, pi/2).
    """
    if not 0.0 < tx_semi_angle < math.pi / 2.0:
        raise ValueError("tx_semi_angle must be in (0, pi/2) radians")
    return -_LN2 / math.log(math.cos(tx_semi_angle))


@dataclass(frozen=True)
class VlcParams:
    """Physical-layer parameters of one LED/photodiode link.

    Angles are radians.  The derived constants (Lambertian order, in-FOV
    concentrator gain, FOV tangent) are computed once at construction;
    ``from_degrees`` supplies them from extended-precision trigonometry so
    that special angles give exact values (m = 1 at 60 degrees).
    """

    detector_area: float            # photodiode physical area, m^2
    refractive_index: float         # concentrator refractive index n_r
    tx_semi_angle: float            # LED half-power semi-angle, rad
    fov_semi_angle: float           # receiver field-of-view semi-angle, rad
    noise_std: float = 1e-10        # AWGN standard deviation sigma_w, A
    illum_factor: float = 1.0       # electro-optic conversion factor xi
    uav_height: float = 8.0         # LED height above ground z_u, m
    lambertian_m: float = -1.0      # derived unless supplied (> 0)
    fov_gain: float = -1.0          # concentrator gain inside the FOV
    fov_tan: float = -1.0           # tan of the FOV semi-angle

    def __post_init__(self):
        if self.detector_area <= 0.0:
            raise ValueError("detector_area must be > 0")
        if self.refractive_index <= 0.0:
            raise ValueError("refractive_index must be > 0")
        if not 0.0 < self.tx_semi_angle < math.pi / 2.0:
            raise ValueError("tx_semi_angle must be in (0, pi/2) radians")
        if not 0.0 < self.fov_semi_angle <= math.pi / 2.0:
            raise ValueError("fov_semi_angle must be in (0, pi/2] radians")
        if self.noise_std <= 0.0:
            raise ValueError("noise_std must be > 0")
        if self.illum_factor <= 0.0:
            raise ValueError("illum_factor must be > 0")
        if self.uav_height <= 0.0:
            raise ValueError("uav_height must be > 0")
        if self.lambertian_m <= 0.0:
            object.__setattr__(self, "lambertian_m",
                               lambertian_order(self.tx_semi_angle))
        if self.fov_gain <= 0.0:
            sin_psi = math.sin(self.fov_semi_angle)
            object.__setattr__(self, "fov_gain",
                               self.refractive_index ** 2 / (sin_psi * sin_psi))
        if self.fov_tan <= 0.0:
            tan_psi = (math.inf if self.fov_semi_angle >= math.pi / 2.0
                       else math.tan(self.fov_semi_angle))
            object.__setattr__(self, "fov_tan", tan_psi)

    @classmethod
    def from_degrees(cls, detector_area: float, refractive_index: float,
                     tx_semi_angle_deg: float, fov_semi_angle_deg: float,
                     noise_std: float = 1e-10, illum_factor: float = 1.0,
                     uav_height: float = 8.0) -> "VlcParams":
        """Construct with angles given in degrees.

        Trigonometric functions of the degree values are evaluated in
        extended precision and rounded once to double, so cos(60 deg) is
        exactly 0.5 and m(60 deg) is exactly 1.0 rather than off by an ulp.
        """
        if not 0.0 < tx_semi_angle_deg < 90.0:
            raise ValueError("tx_semi_angle_deg must be in (0, 90)")
        if not 0.0 < fov_semi_angle_deg <= 90.0:
            raise ValueError("fov_semi_angle_deg must be in (0, 90]")
        with mpmath.mp.workdps(40):
            phi = mpmath.radians(mpmath.mpf(tx_semi_angle_deg))
            psi = mpmath.radians(mpmath.mpf(fov_semi_angle_deg))
            m = float(-mpmath.log(2) / mpmath.log(mpmath.cos(phi)))
            sin2_psi = float(mpmath.sin(psi) ** 2)
            tan_psi = (math.inf if fov_semi_angle_deg >= 90.0
                       else float(mpmath.tan(psi)))
            phi_rad = float(phi)
            psi_rad = float(psi)
        return cls(detector_area, refractive_index, phi_rad, psi_rad,
                   noise_std, illum_factor, uav_height,
                   lambertian_m=m,
                   fov_gain=refractive_index ** 2 / sin2_psi,
                   fov_tan=tan_psi)

    @property
    def fov_ground_radius(self) -> float:
        """Largest horizontal distance still inside the FOV: z_u * tan(Psi_c)."""
        return self.uav_height * self.fov_tan


@dataclass(frozen=True)
class Requirements:
    """Per-user service thresholds.

    rate_threshold is in bits per transmission; illum_threshold is the
    floor on the received illuminance proxy xi * P * h.  Both are
    non-negative and at least one must be positive.
    """

    rate_threshold: float
    illum_threshold: float

    def __post_init__(self):
        if self.rate_threshold < 0.0 or self.illum_threshold < 0.0:
            raise ValueError("thresholds must be >= 0")
        if self.rate_threshold == 0.0 and self.illum_threshold == 0.0:
            raise ValueError("at least one threshold must be > 0")


def concentrator_gain(psi: float, params: VlcParams) -> float:
    """Optical concentrator gain: n_r^2 / sin^2(Psi_c) inside the FOV, else 0."""
    if psi < 0.0:
        raise ValueError("incidence angle must be >= 0")
    return params.fov_gain if psi <= params.fov_semi_angle else 0.0


def channel_gain(uav_pos, user_pos, params: VlcParams) -> float:
    """DC channel gain between a UAV and a ground user.

    uav_pos is (x, y) at params.uav_height, or (x, y, z) to override the
    height.  Returns 0.0 when the user falls outside the field of view.
    """
    z = float(uav_pos[2]) if len(uav_pos) > 2 else params.uav_height
    if z <= 0.0:
        raise ValueError("UAV height must be > 0")
    dx = float(uav_pos[0]) - float(user_pos[0])
    dy = float(uav_pos[1]) - float(user_pos[1])
    r = math.hypot(dx, dy)
    if r > z * params.fov_tan:
        return 0.0
    d2 = r * r + z * z
    d = math.sqrt(d2)
    m = params.lambertian_m
    # cos(phi) = cos(psi) = z / d, so the angular factors give (z/d)^(m+1)
    return ((m + 1.0) * params.detector_area / (_TWO_PI * d2)
            * params.fov_gain * (z / d) ** (m + 1.0))


def capacity_lower_bound(power: float, gain: float, params: VlcParams) -> float:
    """Rate lower bound 1/2 log2(1 + (e/2pi) (xi P h / sigma_w)^2), bits."""
    if power < 0.0 or gain < 0.0:
        raise ValueError("power and gain must be >= 0")
    snr_amp = params.illum_factor * power * gain / params.noise_std
    return 0.5 * math.log1p(math.e / _TWO_PI * snr_amp * snr_amp) / _LN2


def min_power_rate(gain: float, reqs: Requirements, params: VlcParams) -> float:
    """Smallest transmit power whose rate bound meets rate_threshold."""
    if gain <= 0.0:
        raise InfeasibleError("zero channel gain: user outside the field of view")
    # 2^(2 C_th) - 1 via expm1 keeps small thresholds exact
    arg = _TWO_PI / math.e * math.expm1(2.0 * reqs.rate_threshold * _LN2)
    return params.noise_std * math.sqrt(arg) / (params.illum_factor * gain)


def min_power_illum(gain: float, reqs: Requirements, params: VlcParams) -> float:
    """Smallest transmit power with xi * P * h >= illum_threshold."""
    if gain <= 0.0:
        raise InfeasibleError("zero channel gain: user outside the field of view")
    return reqs.illum_threshold / (params.illum_factor * gain)


@dataclass(frozen=True)
class ConstraintCoefficients:
    """Geometry-independent pieces of the per-link minimum power.

    With d the 3D link distance, meeting both constraints costs
    max(v_illum, rate_ratio) * d^exponent where exponent = m + 3:

        v_illum    = 2 pi eta_th / ((m+1) A g z_u^(m+1) xi)
        rate_ratio = M / N, the same quantity for the rate constraint,
                     with M = (2 pi)^(3/2) sigma_w sqrt((2^(2 C_th)-1)/e)
                     and N = xi (m+1) A g z_u^(m+1).

    Whichever coefficient is larger identifies the binding constraint.
    """

    v_illum: float
    rate_ratio: float
    exponent: float

    @property
    def prefactor(self) -> float:
        return max(self.v_illum, self.rate_ratio)


def constraint_coefficients(params: VlcParams,
                            reqs: Requirements) -> ConstraintCoefficients:
    """Fold parameters and thresholds into d^(m+3) power-law coefficients."""
    m = params.lambertian_m
    n_const = (params.illum_factor * (m + 1.0) * params.detector_area
               * params.fov_gain * params.uav_height ** (m + 1.0))
    v_illum = _TWO_PI * reqs.illum_threshold / n_const
    m_const = (_TWO_PI ** 1.5 * params.noise_std
               * math.sqrt(math.expm1(2.0 * reqs.rate_threshold * _LN2) / math.e))
    return ConstraintCoefficients(v_illum=v_illum, rate_ratio=m_const / n_const,
                                  exponent=m + 3.0)


def min_power_for_radius(r: float, coeffs: ConstraintCoefficients,
                         params: VlcParams) -> float:
    """Minimum power to serve a user at horizontal distance r.

    Raises InfeasibleError when r falls outside the FOV ground radius.
    """
    if r < 0.0:
        raise ValueError("horizontal distance must be >= 0")
    if r > params.fov_ground_radius:
        raise InfeasibleError(
            f"horizontal distance {r:.6g} m exceeds the FOV ground radius "
            f"{params.fov_ground_radius:.6g} m")
    z = params.uav_height
    return coeffs.prefactor * (r * r + z * z) ** (0.5 * coeffs.exponent)
