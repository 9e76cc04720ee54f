package run.halo.app.utils;

import java.nio.file.Path;
import run.halo.app.exception.ForbiddenException;

public class FileUtils {

    public static void checkDirectoryTraversal(Path parentPath, Path pathToCheck) {
        Assert.notNull(parentPath, "Parent path must not be null");
        Assert.notNull(pathToCheck, "Path to check must not be null");
        if (pathToCheck.normalize().startsWith(parentPath)) {
            return;
        }
        throw new ForbiddenException("Directory traversal detected: " + pathToCheck.toString());
    }

    public static boolean isInside(Path parentPath, Path child) {
        return child.startsWith(parentPath.normalize());
    }

    static int depth(String path) {
        int count = 0;
        int i = 0;
        while (i < path.length()) {
            if (path.charAt(i) == 47) {
                count = count + 1;
            }
            i = i + 1;
        }
        return count;
    }

    static String extension(String name) {
        int dot = name.lastIndexOf(".");
        if (dot < 0) {
            return "";
        } else {
            return name.substring(dot + 1);
        }
    }

    static boolean isHidden(String name) {
        boolean hidden = name.startsWith(".") ? true : false;
        return hidden;
    }
}
