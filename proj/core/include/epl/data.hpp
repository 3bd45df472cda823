#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epl {

// A sample of strictly positive observations (lifetimes, concentrations, ...).
struct DataSet {
    std::vector<double> values;
    std::string label;

    void validate() const;
    std::size_t size() const { return values.size(); }
};

// Parses whitespace- or comma-separated positive reals; `#` starts a
// comment that runs to end of line. Throws std::runtime_error on empty
// input or std::domain_error on non-positive/non-finite values.
DataSet parse_data(std::istream& in, const std::string& label);

// Loads a data file via parse_data. Throws std::runtime_error if the file
// cannot be opened.
DataSet load_data(const std::string& path);

namespace fixtures {

// Failure times (hours) of an aircraft air-conditioning system; n = 30.
DataSet aircon();

// Vinyl chloride concentrations (mg/L) from clean upgradient monitoring
// wells; n = 34.
DataSet vinyl();

// Resolves a fixture by name ("aircon" or "vinyl"); throws
// std::invalid_argument for unknown names.
DataSet by_name(const std::string& name);

}  // namespace fixtures

}  // namespace epl
