#ifndef GES2N_LOG_HPP
#define GES2N_LOG_HPP

// Minimal stderr logging gated by the GES2N_LOG environment variable
// (error | info | debug).  Unset means errors only.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace ges2n {

enum class log_level { error = 0, info = 1, debug = 2 };

inline log_level current_log_level() {
    static const log_level level = [] {
        const char* env = std::getenv("GES2N_LOG");
        if (!env) return log_level::error;
        if (std::strcmp(env, "debug") == 0) return log_level::debug;
        if (std::strcmp(env, "info") == 0) return log_level::info;
        return log_level::error;
    }();
    return level;
}

inline void log_line(log_level level, const std::string& msg) {
    if (static_cast<int>(level) > static_cast<int>(current_log_level())) return;
    const char* tag = level == log_level::error ? "error" : level == log_level::info ? "info" : "debug";
    std::fprintf(stderr, "[ges2n:%s] %s\n", tag, msg.c_str());
}

inline void log_error(const std::string& msg) { log_line(log_level::error, msg); }
inline void log_info(const std::string& msg) { log_line(log_level::info, msg); }
inline void log_debug(const std::string& msg) { log_line(log_level::debug, msg); }

}  // namespace ges2n

#endif  // GES2N_LOG_HPP
