package spark.route;

public class Routes {

    static boolean isStatic(String path) {
        if (path.startsWith("/public")) {
            return true;
        }
        return path.endsWith(".css");
    }

    static String strip(String path) {
        String p = path;
        while (p.startsWith("/")) {
            p = p.substring(1);
        }
        return p;
    }

    static int priority(int method) {
        if (method == 0 || method == 1) {
            return 1;
        } else if (method == 2) {
            return 2;
        } else {
            return 3;
        }
    }

    static boolean traversal(String path) {
        boolean dots = path.contains("..");
        boolean enc = path.contains("%2e");
        return dots || enc;
    }

    static int sum(int n) {
        int total = 0;
        for (int i = 1; i <= n && i < 100; i = i + 1) {
            total = total + i;
        }
        return total;
    }
}
