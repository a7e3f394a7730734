#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkv {

/// Thrown when two lattice objects of different shape are combined.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite truncation of an l2 sequence: values on sites -I..I, zero outside.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(int half_width);
    LatticeVector(int half_width, std::vector<double> values);

    /// Indicator of one site.
    static LatticeVector basis(int half_width, int site);
    static LatticeVector constant(int half_width, double value);

    int half_width() const { return half_width_; }
    std::size_t size() const { return values_.size(); }

    /// Site-indexed access, site in [-I, I].
    double operator[](int site) const { return values_[static_cast<std::size_t>(site + half_width_)]; }
    double& operator[](int site) { return values_[static_cast<std::size_t>(site + half_width_)]; }

    /// Zero-padded read: sites outside [-I, I] return 0.
    double padded(int site) const;

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    bool operator==(const LatticeVector&) const = default;

    LatticeVector& operator+=(const LatticeVector& other);
    LatticeVector& operator-=(const LatticeVector& other);
    LatticeVector& operator*=(double scale);

private:
    int half_width_ = 0;
    std::vector<double> values_;
};

LatticeVector operator+(LatticeVector a, const LatticeVector& b);
LatticeVector operator-(LatticeVector a, const LatticeVector& b);
LatticeVector operator*(double scale, LatticeVector a);

void require_same_shape(const LatticeVector& a, const LatticeVector& b, const char* what);

// Difference operators with Dirichlet (zero) padding beyond |i| > I.
LatticeVector apply_B(const LatticeVector& u);      // (Bu)_i  = u_{i+1} - u_i
LatticeVector apply_Bstar(const LatticeVector& u);  // (B*u)_i = u_{i-1} - u_i
LatticeVector apply_A(const LatticeVector& u);      // (Au)_i  = -u_{i-1} + 2u_i - u_{i+1}

double inner(const LatticeVector& u, const LatticeVector& v);
double l2_norm(const LatticeVector& u);
double lp_norm(const LatticeVector& u, double p);

/// Sum of u_i^2 over |i| >= n, for 0 <= n <= I+1.
double tail_mass(const LatticeVector& u, int n);

/// Number of grid steps covering the delay; throws unless delay is an integer multiple of dt.
int delay_steps(double delay, double dt);

/// Discrete path over [t - r, t] on a uniform grid, stored as a ring of K+1 frames.
///
/// frame(0) is the oldest value u(t - r), frame(K) the newest u(t).
class SegmentBuffer {
public:
    SegmentBuffer() = default;
    /// Constant path equal to `value` at every grid time.
    SegmentBuffer(double delay, double dt, const LatticeVector& value);
    /// Explicit frames, oldest first; requires frames.size() == K + 1.
    SegmentBuffer(double delay, double dt, std::vector<LatticeVector> frames);

    double delay() const { return delay_; }
    double dt() const { return dt_; }
    int steps() const { return steps_; }
    int half_width() const { return frames_.front().half_width(); }
    std::size_t frame_count() const { return frames_.size(); }

    const LatticeVector& frame(std::size_t j) const { return frames_[physical(j)]; }
    const LatticeVector& oldest() const { return frame(0); }
    const LatticeVector& newest() const { return frame(frames_.size() - 1); }

    /// Frame at time offset s in [-r, 0], rounded to the nearest grid point.
    const LatticeVector& at_offset(double offset) const;

    /// Drops the oldest frame and appends `next` as the newest.
    void push(const LatticeVector& next);

    /// Rotates the ring so the oldest slot becomes the newest and returns it for
    /// in-place overwrite. Callers must read what they need from the old contents first.
    LatticeVector& recycle_oldest();

    /// Frames in time order, oldest first.
    std::vector<LatticeVector> ordered_frames() const;

private:
    std::size_t physical(std::size_t j) const { return (head_ + j) % frames_.size(); }

    double delay_ = 0.0;
    double dt_ = 0.0;
    int steps_ = 0;
    std::size_t head_ = 0;
    std::vector<LatticeVector> frames_;
};

/// max over frames of the l2 norm.
double segment_sup_norm(const SegmentBuffer& s);

/// Frame-wise difference a - b; both buffers must share grid and shape.
SegmentBuffer segment_difference(const SegmentBuffer& a, const SegmentBuffer& b);

}  // namespace mkv
