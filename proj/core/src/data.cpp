#include <epl/data.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epl {

void DataSet::validate() const {
    if (values.empty())
        throw std::runtime_error("DataSet: no observations");
    for (double v : values) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::domain_error(
                "DataSet: observations must be finite and > 0");
    }
}

DataSet parse_data(std::istream& in, const std::string& label) {
    DataSet ds;
    ds.label = label;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw std::runtime_error("parse_data: bad numeric token '" +
                                         tok + "'");
            }
            if (used != tok.size())
                throw std::runtime_error("parse_data: bad numeric token '" +
                                         tok + "'");
            ds.values.push_back(v);
        }
    }
    ds.validate();
    return ds;
}

DataSet load_data(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_data: cannot open '" + path + "'");
    return parse_data(in, path);
}

namespace fixtures {

DataSet aircon() {
    return DataSet{{23,  261, 87, 7,  120, 14, 62,  47, 225, 71,
                    246, 21,  42, 20, 5,   12, 120, 11, 3,   14,
                    71,  11,  14, 11, 16,  90, 1,   16, 52,  95},
                   "aircon"};
}

DataSet vinyl() {
    return DataSet{{5.1, 1.2, 1.3, 0.6, 0.5, 2.4, 0.5, 1.1, 8.0, 0.8, 0.4, 0.6,
                    0.9, 0.4, 2.0, 0.5, 5.3, 3.2, 2.7, 2.9, 2.5, 2.3, 1.0, 0.2,
                    0.1, 0.1, 1.8, 0.9, 2.0, 4.0, 6.8, 1.2, 0.4, 0.2},
                   "vinyl"};
}

DataSet by_name(const std::string& name) {
    if (name == "aircon") return aircon();
    if (name == "vinyl") return vinyl();
    throw std::invalid_argument("unknown fixture '" + name +
                                "' (expected 'aircon' or 'vinyl')");
}

}  // namespace fixtures

}  // namespace epl
