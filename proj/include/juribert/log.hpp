#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>

namespace juribert {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

inline LogLevel& log_threshold() {
    static LogLevel level = LogLevel::info;
    return level;
}

// Line-oriented, timestamped, level-tagged, stderr only. Machine-readable
// output goes to files, never through here.
inline void log_line(LogLevel level, const std::string& msg) {
    if (level < log_threshold()) {
        return;
    }
    const char* tag = "INFO";
    switch (level) {
        case LogLevel::debug: tag = "DEBUG"; break;
        case LogLevel::info: tag = "INFO"; break;
        case LogLevel::warn: tag = "WARN"; break;
        case LogLevel::error: tag = "ERROR"; break;
    }
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    std::fprintf(stderr, "%s %-5s %s\n", stamp, tag, msg.c_str());
}

inline void log_info(const std::string& msg) { log_line(LogLevel::info, msg); }
inline void log_warn(const std::string& msg) { log_line(LogLevel::warn, msg); }
inline void log_error(const std::string& msg) { log_line(LogLevel::error, msg); }

}  // namespace juribert
