#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfmn/network.hpp"

namespace bfmn {

struct VadEntry {
    double valence = 0.0;
    double arousal = 0.0;
    double dominance = 0.0;
};

// NRC-VAD style lexicon: tab-separated "word v a d" rows, scores in [0,1].
class VadLexicon {
  public:
    static VadLexicon load(const std::string& path);
    static VadLexicon from_entries(const std::map<std::string, VadEntry>& entries);

    // Surface form first, then the stem against stemmed lexicon keys.
    std::optional<VadEntry> lookup(const std::string& surface, const std::string& stem) const;
    std::size_t size() const { return entries_.size(); }

  private:
    void index_stems();
    std::map<std::string, VadEntry> entries_;
    std::map<std::string, std::string> by_stem_;  // stem -> lexicon word
};

// NRC emotion thesaurus: long-format "word<TAB>emotion<TAB>0|1" rows over
// eight basic emotions plus positive/negative sentiment.
class EmotionLexicon {
  public:
    using Flags = std::array<bool, 10>;

    static const std::array<std::string, 10>& emotion_names();  // alphabetical
    static bool is_basic_emotion(std::size_t index);

    static EmotionLexicon load(const std::string& path);
    static EmotionLexicon from_flags(const std::map<std::string, Flags>& flags);

    std::optional<Flags> lookup(const std::string& surface, const std::string& stem) const;
    // Absent from the thesaurus or all eight basic-emotion flags false.
    bool non_emotional(const std::string& surface, const std::string& stem) const;
    std::size_t size() const { return flags_.size(); }

  private:
    void index_stems();
    std::map<std::string, Flags> flags_;
    std::map<std::string, std::string> by_stem_;
};

struct CircumplexPoint {
    std::string stem;
    double valence = 0.0;
    double arousal = 0.0;
    double weight = 1.0;
};

struct CoverageReport {
    std::size_t found = 0;
    std::size_t missing = 0;
    std::size_t total() const { return found + missing; }
};

std::pair<std::vector<CircumplexPoint>, CoverageReport> circumplex_points(
    const SemanticFrame& frame, const VadLexicon& vad);

// Weighted Gaussian KDE over [0,1]^2, evaluated at cell centers and
// renormalized so the midpoint-rule mass equals one.
struct DensityGrid {
    std::size_t n = 0;
    double bandwidth_x = 0.0;
    double bandwidth_y = 0.0;
    std::vector<double> cells;  // row-major, index iy * n + ix

    double at(std::size_t ix, std::size_t iy) const { return cells[iy * n + ix]; }
    double mass() const;
};

DensityGrid kde_density(const std::vector<CircumplexPoint>& points, std::size_t n = 100,
                        std::optional<std::pair<double, double>> bandwidth = std::nullopt);

enum class Quadrant {
    SerenityLowerRight,
    AnxietyUpperLeft,
    ExcitementUpperRight,
    BoredomLowerLeft,
};

std::string to_string(Quadrant q);

// Midpoint partition of [0,1]^2; boundaries go right on valence (>= 0.5)
// and down on arousal (<= 0.5).
Quadrant quadrant(double valence, double arousal);
Quadrant quadrant(const CircumplexPoint& p);

double quadrant_mass(const DensityGrid& grid, Quadrant q);

std::string density_to_json(const DensityGrid& grid, const std::vector<CircumplexPoint>& points,
                            const CoverageReport& coverage);
std::string density_to_csv(const DensityGrid& grid);
DensityGrid density_from_json(const std::string& text, std::vector<CircumplexPoint>* points);

}  // namespace bfmn
