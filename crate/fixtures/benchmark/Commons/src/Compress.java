package org.apache.commons.compress;

public class Compress {

    static int readSize(int header, int limit) {
        int size = header * 512;
        if (size > limit) {
            return -1;
        }
        return size;
    }

    static String entryName(String prefix, String name) {
        String full = prefix.concat(name);
        return full.startsWith("/") ? full.substring(1) : full;
    }

    static int checksum(int a, int b, int c) {
        int sum = 0;
        sum = sum + a;
        sum = sum + b;
        sum = sum + c;
        return sum % 256;
    }

    static boolean isSymlink(int mode) {
        switch (mode) {
            case 40960:
                return true;
            case 41471:
                return true;
            default:
                return false;
        }
    }

    static int blocks(int bytes) {
        int count = 0;
        for (int left = bytes; left > 0; left = left - 512) {
            count = count + 1;
        }
        return count;
    }
}
