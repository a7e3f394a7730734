#include "mkv/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace mkv {

LatticeVector::LatticeVector(int half_width)
    : half_width_(half_width), values_(static_cast<std::size_t>(2 * half_width + 1), 0.0) {
    if (half_width < 1) throw DimensionError("LatticeVector: half_width must be >= 1");
}

LatticeVector::LatticeVector(int half_width, std::vector<double> values)
    : half_width_(half_width), values_(std::move(values)) {
    if (half_width < 1) throw DimensionError("LatticeVector: half_width must be >= 1");
    if (values_.size() != static_cast<std::size_t>(2 * half_width + 1))
        throw DimensionError("LatticeVector: expected 2I+1 values");
    for (double x : values_)
        if (!std::isfinite(x)) throw std::invalid_argument("LatticeVector: non-finite entry");
}

LatticeVector LatticeVector::basis(int half_width, int site) {
    LatticeVector e(half_width);
    if (site < -half_width || site > half_width) throw DimensionError("basis: site outside lattice");
    e[site] = 1.0;
    return e;
}

LatticeVector LatticeVector::constant(int half_width, double value) {
    LatticeVector c(half_width);
    std::fill(c.values_.begin(), c.values_.end(), value);
    return c;
}

double LatticeVector::padded(int site) const {
    if (site < -half_width_ || site > half_width_) return 0.0;
    return (*this)[site];
}

void require_same_shape(const LatticeVector& a, const LatticeVector& b, const char* what) {
    if (a.half_width() != b.half_width())
        throw DimensionError(std::string(what) + ": half_width mismatch (" +
                             std::to_string(a.half_width()) + " vs " + std::to_string(b.half_width()) + ")");
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

LatticeVector& LatticeVector::operator*=(double scale) {
    for (double& x : values_) x *= scale;
    return *this;
}

LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
LatticeVector operator*(double scale, LatticeVector a) { return a *= scale; }

LatticeVector apply_B(const LatticeVector& u) {
    const int I = u.half_width();
    LatticeVector out(I);
    for (int i = -I; i <= I; ++i) out[i] = u.padded(i + 1) - u[i];
    return out;
}

LatticeVector apply_Bstar(const LatticeVector& u) {
    const int I = u.half_width();
    LatticeVector out(I);
    for (int i = -I; i <= I; ++i) out[i] = u.padded(i - 1) - u[i];
    return out;
}

LatticeVector apply_A(const LatticeVector& u) {
    const int I = u.half_width();
    LatticeVector out(I);
    for (int i = -I; i <= I; ++i) out[i] = -u.padded(i - 1) + 2.0 * u[i] - u.padded(i + 1);
    return out;
}

double inner(const LatticeVector& u, const LatticeVector& v) {
    require_same_shape(u, v, "inner");
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u.values()[j] * v.values()[j];
    return s;
}

double l2_norm(const LatticeVector& u) { return std::sqrt(inner(u, u)); }

double lp_norm(const LatticeVector& u, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    for (double x : u.values()) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

double tail_mass(const LatticeVector& u, int n) {
    const int I = u.half_width();
    if (n < 0 || n > I + 1) throw std::out_of_range("tail_mass: n must lie in [0, I+1]");
    double s = 0.0;
    for (int i = -I; i <= I; ++i)
        if (std::abs(i) >= n) s += u[i] * u[i];
    return s;
}

int delay_steps(double delay, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(delay > 0.0)) throw std::invalid_argument("delay must be positive");
    const double ratio = delay / dt;
    const double k = std::round(ratio);
    if (k < 1.0 || std::abs(ratio - k) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("delay must be an integer multiple of dt");
    return static_cast<int>(k);
}

SegmentBuffer::SegmentBuffer(double delay, double dt, const LatticeVector& value)
    : delay_(delay), dt_(dt), steps_(delay_steps(delay, dt)),
      frames_(static_cast<std::size_t>(steps_ + 1), value) {}

SegmentBuffer::SegmentBuffer(double delay, double dt, std::vector<LatticeVector> frames)
    : delay_(delay), dt_(dt), steps_(delay_steps(delay, dt)), frames_(std::move(frames)) {
    if (frames_.size() != static_cast<std::size_t>(steps_ + 1))
        throw DimensionError("SegmentBuffer: expected K+1 frames");
    for (const auto& f : frames_) require_same_shape(frames_.front(), f, "SegmentBuffer");
}

const LatticeVector& SegmentBuffer::at_offset(double offset) const {
    const double tol = 1e-9 * delay_;
    if (offset > tol || offset < -delay_ - tol)
        throw std::out_of_range("SegmentBuffer: offset outside [-r, 0]");
    const long j = std::lround(offset / dt_) + steps_;
    return frame(static_cast<std::size_t>(std::clamp(j, 0L, static_cast<long>(steps_))));
}

void SegmentBuffer::push(const LatticeVector& next) {
    require_same_shape(frames_.front(), next, "SegmentBuffer::push");
    recycle_oldest() = next;
}

LatticeVector& SegmentBuffer::recycle_oldest() {
    LatticeVector& slot = frames_[head_];
    head_ = (head_ + 1) % frames_.size();
    return slot;
}

std::vector<LatticeVector> SegmentBuffer::ordered_frames() const {
    std::vector<LatticeVector> out;
    out.reserve(frames_.size());
    for (std::size_t j = 0; j < frames_.size(); ++j) out.push_back(frame(j));
    return out;
}

double segment_sup_norm(const SegmentBuffer& s) {
    double best = 0.0;
    for (std::size_t j = 0; j < s.frame_count(); ++j) best = std::max(best, l2_norm(s.frame(j)));
    return best;
}

SegmentBuffer segment_difference(const SegmentBuffer& a, const SegmentBuffer& b) {
    if (a.steps() != b.steps() || a.frame_count() != b.frame_count())
        throw DimensionError("segment_difference: grid mismatch");
    std::vector<LatticeVector> frames;
    frames.reserve(a.frame_count());
    for (std::size_t j = 0; j < a.frame_count(); ++j) frames.push_back(a.frame(j) - b.frame(j));
    return SegmentBuffer(a.delay(), a.dt(), std::move(frames));
}

}  // namespace mkv
