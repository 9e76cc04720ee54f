import java.nio.file.Path;

public class FileUtils {

    public static void checkDirectoryTraversal(Path parentPath, Path pathToCheck) {
        if (pathToCheck.startsWith(parentPath.normalize())) {
            return;
        }
        throw new ForbiddenException("Directory traversal detected");
    }
}
