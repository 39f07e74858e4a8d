#pragma once

#include <stdexcept>
#include <string>

namespace graphenum {

// The three graph families: no K4 minor, no K4 and no K2,3 minor,
// no K2,3 minor.
enum class Family { SeriesParallel, Outerplanar, K23MinorFree };

enum class Level { All, Connected, Biconnected };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::SeriesParallel: return "sp";
        case Family::Outerplanar: return "outerplanar";
        case Family::K23MinorFree: return "k23free";
    }
    return "?";
}

inline std::string level_name(Level l) {
    switch (l) {
        case Level::All: return "all";
        case Level::Connected: return "connected";
        case Level::Biconnected: return "biconnected";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "sp" || s == "series-parallel" || s == "seriesparallel") return Family::SeriesParallel;
    if (s == "outerplanar" || s == "outer") return Family::Outerplanar;
    if (s == "k23free" || s == "k23" || s == "no-k23") return Family::K23MinorFree;
    throw std::invalid_argument("unknown family: " + s);
}

inline Level level_from_name(const std::string& s) {
    if (s == "all") return Level::All;
    if (s == "connected") return Level::Connected;
    if (s == "biconnected" || s == "2connected" || s == "2-connected") return Level::Biconnected;
    throw std::invalid_argument("unknown level: " + s);
}

}  // namespace graphenum
