package org.apache.shiro.util;

public class PathMatcher {

    static boolean matches(String pattern, String path) {
        if (pattern.endsWith("/**")) {
            return path.startsWith(pattern.substring(0, pattern.length() - 3));
        }
        return pattern.equals(path);
    }

    static String trimSlash(String path) {
        if (!path.endsWith("/")) {
            return path;
        } else {
            return path.substring(0, path.length() - 1);
        }
    }

    static int segments(String path) {
        int count = 0;
        String rest = path;
        while (rest.contains("/")) {
            rest = rest.substring(rest.indexOf("/") + 1);
            count = count + 1;
        }
        return count;
    }

    static boolean isRoot(String path) {
        boolean empty = path.isEmpty();
        boolean slash = path.equals("/");
        return empty || slash;
    }

    static String normalize(String path) {
        String lower = path.startsWith("./") ? path.substring(2) : path;
        return trimSlash(lower);
    }
}
