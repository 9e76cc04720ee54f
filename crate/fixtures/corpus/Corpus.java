package corpus;

public class Corpus {

    static int abs(int x) {
        if (x < 0) {
            return -x;
        } else {
            return x;
        }
    }

    static int sign(int x) {
        if (x > 0) {
            return 1;
        } else if (x < 0) {
            return -1;
        } else {
            return 0;
        }
    }

    static String describe(boolean flag, String name) {
        if (flag && name != null) {
            return name.concat("!");
        } else {
            return "none";
        }
    }

    static int guardOnly(int x) {
        if (x == 5) {
            x = x * 2;
        }
        return x;
    }

    static int sumTo(int n) {
        int total = 0;
        for (int i = 0; i < n && i < 50; i = i + 1) {
            total = total + i;
        }
        return total;
    }

    static int countdown(int n) {
        int steps = 0;
        int k = n;
        while (k > 0 && steps < 40) {
            k = k - 3;
            steps = steps + 1;
        }
        return steps;
    }

    static int skipOdd(int n) {
        int total = 0;
        for (int i = 0; i < 20; i = i + 1) {
            if (i % 2 == 1) {
                continue;
            }
            total = total + i * n;
        }
        return total;
    }

    static int firstMultiple(int n, int d) {
        int found = -1;
        for (int i = 1; i < 30; i = i + 1) {
            if (d != 0 && i * n % d == 0) {
                found = i;
                break;
            }
        }
        return found;
    }

    static int whileWithUpdate(int n) {
        int i = 0;
        int acc = 1;
        while (i < 10) {
            acc = acc + n;
            i = i + 1;
        }
        return acc;
    }

    static int dayNumber(String day) {
        switch (day) {
            case "mon":
                return 1;
            case "tue":
                return 2;
            case "wed":
                return 3;
            default:
                return 0;
        }
    }

    static int weight(int code) {
        int w;
        switch (code) {
            case 1:
                w = 10;
                break;
            case 2:
            case 3:
                w = 20;
                break;
            default:
                w = -1;
                break;
        }
        return w;
    }

    static String level(int n) {
        if (n == 0) {
            return "zero";
        } else if (n == 1) {
            return "one";
        } else if (n == 2 || n == 3) {
            return "few";
        } else {
            return "many";
        }
    }

    static int fromName(String s) {
        if (s.equals("a")) {
            return 1;
        } else if (s.equals("b")) {
            return 2;
        }
        return 3;
    }

    static int pick(boolean c, int a, int b) {
        int r = c ? a : b;
        return r;
    }

    static int maxOf(int a, int b) {
        int m;
        m = a > b ? a : b;
        return m;
    }

    static String label(int n) {
        String s = n > 9 ? "big" : "small";
        return s.concat(":") + n;
    }

    static int lengthOfTrimmed(String s) {
        return s.substring(1).length();
    }

    static boolean sameStart(String a, String b) {
        boolean r = a.concat(b).startsWith(b.concat(a));
        return r;
    }

    static int chained(String s) {
        int n = s.concat("xy").substring(1).length();
        return n;
    }

    static boolean prefixCheck(String path, String root) {
        return path.startsWith(root.concat("/"));
    }

    static int twice(int x) {
        return x * 2;
    }

    static int useHelper(int x, int y) {
        return Math.max(twice(x), y);
    }

    static String joined(String a, String b) {
        return a.concat(b.substring(0, 1));
    }

    static int divide(int a, int b) {
        int q = a / b;
        return q;
    }

    static int independent(int a, int b) {
        int x = a + 1;
        int y = b * 2;
        return x - y;
    }

    static int swapSafe(int a) {
        int n = 0;
        int m = a * a;
        n = n + m;
        return n;
    }

    static String withCalls(String s) {
        int n = s.length();
        String t = s.concat("!");
        return t + n;
    }

    static int dependent(int x) {
        int a = 1;
        a = a + x;
        int b = a + 1;
        return b;
    }

    static boolean flags(boolean a, boolean b) {
        boolean both = a && b;
        boolean either = a || b;
        if (both) {
            return either;
        } else {
            return !either;
        }
    }

    static int nested(int a, int b) {
        int r = 0;
        for (int i = 0; i < 5; i = i + 1) {
            if (a > i) {
                r = r + a;
            } else {
                r = r - b;
            }
        }
        return r;
    }

    static int failsOnNegative(int x) {
        int zero = 0;
        if (x < -5) {
            return x / zero;
        }
        return x;
    }

    static String nullSafe(String s) {
        if (s == null) {
            return "";
        } else {
            return s.substring(0, Math.min(2, s.length()));
        }
    }

    static int modes(int m, boolean strict) {
        int r = strict ? m * 2 : m;
        if (r == 4) {
            return 40;
        } else if (r == 8) {
            return 80;
        } else {
            return r;
        }
    }

    static int indexAfter(String s, String sep) {
        int i = s.indexOf(sep);
        int j = i + sep.length();
        return j;
    }

    static int lengths(String a, String b) {
        int total = Math.abs(a.length() - b.length());
        return total;
    }

    static boolean containsBoth(String s) {
        boolean r = s.contains("a") && s.contains("b");
        return r;
    }

    static int stepper(int n) {
        int out = 0;
        for (int i = n; i > 0 && out < 30; i = i / 2) {
            out = out + 1;
        }
        return out;
    }

    static String grade(int score) {
        String g;
        if (score >= 90) {
            g = "A";
        } else {
            if (score >= 50) {
                g = "B";
            } else {
                g = "C";
            }
        }
        return g;
    }
}
