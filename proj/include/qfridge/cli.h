// Copyright 2026 The qfridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFRIDGE_CLI_H
#define QFRIDGE_CLI_H

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

namespace qfridge::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerifyFailed = 2, kExitIo = 3 };

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` document. Lines starting with `# config:` are read as entries too,
/// so a CSV written by this tool can be fed back as its own configuration.
class Config {
   public:
    static Config parse(std::string_view text);
    static Config load(const std::string &path);

    void set(const std::string &key, std::string value);
    bool has(const std::string &key) const;
    const std::string &get(const std::string &key) const;
    double get_double(const std::string &key) const;
    uint64_t get_u64(const std::string &key) const;

    const std::map<std::string, std::string> &entries() const {
        return values_;
    }

   private:
    std::map<std::string, std::string> values_;
};

/// Comma-separated values and ranges `a:b` or `a:b:step`. An empty string is an empty grid.
std::vector<double> parse_real_grid(std::string_view text);
std::vector<size_t> parse_count_grid(std::string_view text);
std::vector<std::string> parse_word_list(std::string_view text);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// Extra key/value results, emitted as `# key = value` trailer lines in CSV and as fields in JSON.
    std::vector<std::pair<std::string, std::string>> summary;
};

std::string format_number(double v);
std::string format_csv(const Config &cfg, const Table &table);
std::string format_json(const Config &cfg, const Table &table);

/// Keys and default values understood by a subcommand.
const std::vector<std::pair<std::string, std::string>> &command_defaults(const std::string &command);
const std::vector<std::string> &command_names();

/// Runs one data command with a fully resolved config.
Table run_command(const std::string &command, const Config &cfg, unsigned threads);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Runs every cross-module check; `on_result` sees each check as it finishes, in a fixed order.
std::vector<VerifyCheck> run_verify(unsigned threads, const std::function<void(const VerifyCheck &)> &on_result = {});

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers; results keep index order.
template <typename T>
std::vector<T> parallel_map(size_t count, unsigned threads, const std::function<T(size_t)> &fn) {
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    const unsigned workers = std::max<unsigned>(1, std::min<size_t>(threads, count));
    auto work = [&](unsigned w) {
        for (size_t i = w; i < count; i += workers) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

int main_entry(int argc, char **argv);

}  // namespace qfridge::cli

#endif
