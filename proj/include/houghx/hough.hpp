#ifndef HOUGHX_HOUGH_HPP
#define HOUGHX_HOUGH_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "houghx/gradient.hpp"
#include "houghx/raster.hpp"

namespace houghx {

enum class HoughMode { regular, extended };
enum class WeightMode { unit, magnitude };

struct HoughParams {
    double delta_rho = 1.0;      // px
    double delta_theta = 0.5;    // deg
    double theta_window = 22.5;  // deg, half-range around theta0
    WeightMode weight_mode = WeightMode::unit;
};

// Discretization of the (theta, rho) space. Theta spans [-90, 90) in regular
// mode and the cyclic [-180, 180) in extended mode; rho spans
// [-rho_max, rho_max] with rho_max inflated to a whole number of bins so the
// bin centers are symmetric about zero. Bin centers sit at
// theta_min + (i + 0.5) * delta_theta and -rho_max + (j + 0.5) * delta_rho.
struct AccumulatorGeometry {
    HoughMode mode = HoughMode::regular;
    double theta_min = 0.0;
    double theta_max = 0.0;
    double delta_theta = 0.0;
    double delta_rho = 0.0;
    double rho_max = 0.0;
    int n_theta = 0;
    int n_rho = 0;

    static AccumulatorGeometry for_image(int width, int height, HoughMode mode, const HoughParams& params);
    // Half-extents of the centered coordinate range (e.g. window_size / 2).
    static AccumulatorGeometry for_extent(double half_x, double half_y, HoughMode mode, const HoughParams& params);

    double theta_center(int i) const { return theta_min + (i + 0.5) * delta_theta; }
    double rho_center(int j) const { return -rho_max + (j + 0.5) * delta_rho; }

    // Bin containing rho, clamped to the grid.
    int rho_bin(double rho) const;
};

class Accumulator {
public:
    explicit Accumulator(AccumulatorGeometry geometry);

    const AccumulatorGeometry& geometry() const { return geom_; }
    double at(int theta_bin, int rho_bin) const { return votes_[index(theta_bin, rho_bin)]; }
    void add(int theta_bin, int rho_bin, double weight) { votes_[index(theta_bin, rho_bin)] += weight; }

    const std::vector<double>& votes() const { return votes_; }
    double max_votes() const;
    double total_votes() const;

private:
    std::size_t index(int theta_bin, int rho_bin) const {
        return static_cast<std::size_t>(theta_bin) * geom_.n_rho + rho_bin;
    }
    AccumulatorGeometry geom_;
    std::vector<double> votes_;
};

// rho = x cos(theta) + y sin(theta)
double rho_of(const CenteredPoint& p, double theta_deg);

// The second representation of the same undirected line: (theta + 180, -rho),
// theta wrapped into [-180, 180).
std::pair<double, double> antipode(double theta_deg, double rho);

// Votes the full sinusoid of p across every theta bin.
void vote_sinusoid(Accumulator& acc, const CenteredPoint& p, double weight = 1.0);

// Votes only the theta bins whose centers fall in the open interval
// (theta0 - window, theta0 + window); cyclic mod 360 in extended mode and
// mod 180 in regular mode.
void vote_oriented(Accumulator& acc, const CenteredPoint& p, double theta0_deg,
                   double window_deg, double weight = 1.0);

// Classical HT: every edge pixel votes its full sinusoid. Regular mode only.
// grad is required only for magnitude weighting.
Accumulator accumulate_full(const EdgeMap& edges, const AccumulatorGeometry& geom,
                            const HoughParams& params, const GradientField* grad = nullptr);

// Orientation-limited HT: theta0 per pixel from atan2 (extended mode) or
// atan (regular mode), window theta_window on each side.
Accumulator accumulate_oriented(const EdgeMap& edges, const GradientField& grad,
                                const AccumulatorGeometry& geom, const HoughParams& params);

// Collapses an extended accumulator onto the regular range by summing each
// bin with its antipode.
Accumulator fold_extended(const Accumulator& acc);

// sqrt-compressed, inverted rendering: black = maximum vote count, white =
// zero. Theta on the horizontal axis, rho increasing upward.
GrayImage render_accumulator(const Accumulator& acc);

// Nonzero bins as "theta_deg,rho_px,votes" rows.
void dump_csv(const Accumulator& acc, std::ostream& out);

} // namespace houghx

#endif
